// Copyright 2026 The Reident Risk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Assessment orchestration: groups quasi-identifiers into attack surfaces,
// rates each one's exploitability from its exposure and inference level, pairs
// that with the severity of what it reveals, and flags individual records.

#ifndef REIDENT_ENGINE_H_
#define REIDENT_ENGINE_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "reident/metrics.h"
#include "reident/model.h"

namespace reident {

enum class CombinationOrigin {
  kIndividual,
  kPerLevelGroup,
  kCumulativeGroup,
  kExplicit,
};

std::string_view OriginName(CombinationOrigin origin);

struct QiCombination {
  // Declaration order of the metadata.
  std::vector<std::string> members;
  // Max over member exposures.
  ExposureLevel exposure = ExposureLevel::kInternalRestricted;
  CombinationOrigin origin = CombinationOrigin::kIndividual;

  // "Age/Gender/Country".
  std::string DisplayName() const;
};

struct ExploitabilityRow {
  QiCombination combination;
  DrResult dr;
  ExploitabilityLevel exploitability = ExploitabilityLevel::kVeryDifficult;

  InferenceLevel inference() const { return dr.inference; }
};

struct RiskRow {
  std::string description;
  std::string sensitive;
  QiCombination combination;
  ExploitabilityLevel exploitability = ExploitabilityLevel::kVeryDifficult;
  GlobalSeverityLevel severity = GlobalSeverityLevel::kNegligible;
  RiskLevel risk = RiskLevel::kLow;
};

struct FlaggedRecord {
  size_t row_index = 0;  // 0-based
  std::string sensitive;
  std::string sensitive_value;
  GlobalSeverityLevel value_severity = GlobalSeverityLevel::kNegligible;
  // Combination whose class is used for class_inference.
  std::vector<std::string> combination;
  double class_inference = 0.0;
  RiskLevel record_risk = RiskLevel::kLow;
};

// Matrices used to combine levels. Defaults are closed forms:
//   exploitability(e, i) = floor((e + i) / 2)
//   risk(l, s) = band(l * s) with bands <=2, <=6, <=9, >=10.
struct RiskMatrices {
  ScaleMatrix exploitability;
  ScaleMatrix risk;

  static RiskMatrices Defaults();
};

ScaleMatrix DefaultExploitabilityMatrix();
ScaleMatrix DefaultRiskMatrix();

// Rows are exposure, columns are inference.
ExploitabilityLevel Exploitability(ExposureLevel exposure,
                                   InferenceLevel inference,
                                   const ScaleMatrix& matrix);

// Rows are exploitability, columns are severity.
RiskLevel Risk(ExploitabilityLevel exploitability, GlobalSeverityLevel severity,
               const ScaleMatrix& matrix);

// Global severity of `value` for a sensitive attribute, using the per-value
// override when one exists and the attribute-level rating otherwise.
absl::StatusOr<GlobalSeverityLevel> SeverityOfValue(
    std::span<const AttributeMeta> meta, std::string_view attribute,
    std::string_view value);

// Every quasi-identifier on its own, plus the groups the strategy asks for.
// Combinations with the same member set are emitted once, first one wins.
absl::StatusOr<std::vector<QiCombination>> BuildCombinations(
    std::span<const AttributeMeta> meta, CombinationStrategy strategy,
    std::span<const std::vector<std::string>> explicit_sets);

// ValidateMeta plus the assessment's own preconditions.
ValidationOutcome CheckAssessable(const Dataset& dataset,
                                  std::span<const AttributeMeta> meta,
                                  const AssessmentOptions& options);

struct AssessmentReport;

// Fails with FailedPrecondition listing every CheckAssessable error.
absl::StatusOr<AssessmentReport> Assess(const Dataset& dataset,
                                        std::span<const AttributeMeta> meta,
                                        const AssessmentOptions& options,
                                        const RiskMatrices& matrices);

}  // namespace reident

#endif  // REIDENT_ENGINE_H_
