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

#ifndef REIDENT_REPORT_H_
#define REIDENT_REPORT_H_

#include <cstdint>
#include <string>
#include <vector>

#include "reident/engine.h"
#include "reident/metrics.h"
#include "reident/model.h"

namespace reident {

struct AttributeSeverityEntry {
  std::string attribute;
  SeverityRating rating;
  GlobalSeverityLevel global = GlobalSeverityLevel::kNegligible;
};

struct ValueSeverityEntry {
  std::string attribute;
  std::string value;
  SeverityRating rating;
  GlobalSeverityLevel global = GlobalSeverityLevel::kNegligible;
  bool present = false;  // the value occurs in the dataset
};

struct ExposureEntry {
  std::string attribute;
  ExposureLevel exposure = ExposureLevel::kInternalRestricted;
};

struct SensitiveMetrics {
  std::string sensitive;
  // All declared quasi-identifiers.
  std::vector<std::string> qi_set;
  int64_t k_anonymity = 0;
  int64_t l_diversity = 0;
  // One per combination, in exploitability-row order.
  std::vector<DrResult> dr_values;
};

struct AssessmentReport {
  std::string dataset_label;
  size_t row_count = 0;
  std::vector<std::string> attributes;

  AssessmentOptions options;
  RiskMatrices matrices = RiskMatrices::Defaults();

  std::vector<AttributeSeverityEntry> attribute_severity;
  std::vector<ValueSeverityEntry> value_severity;
  std::vector<ExposureEntry> exposure;
  std::vector<ExploitabilityRow> exploitability_rows;
  std::vector<RiskRow> risk_rows;
  RiskLevel overall_risk = RiskLevel::kLow;
  std::vector<FlaggedRecord> flagged_records;
  std::vector<SensitiveMetrics> metrics;
  std::vector<std::string> warnings;
};

// Canonical JSON: sorted object keys, arrays in report order, reals as
// fixed six-decimal strings, two-space indent, trailing newline.
std::string ToJson(const AssessmentReport& report);

// CommonMark tables in a fixed section order.
std::string ToMarkdown(const AssessmentReport& report);

// Six-decimal fixed rendering shared by every serializer.
std::string FormatReal(double value);

}  // namespace reident

#endif  // REIDENT_REPORT_H_
