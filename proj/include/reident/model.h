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

// Domain types shared by every stage of an assessment: the dataset under
// analysis, the analyst's per-attribute judgments, and the five ordinal
// four-level scales that the risk computation moves between.

#ifndef REIDENT_MODEL_H_
#define REIDENT_MODEL_H_

#include <algorithm>
#include <array>
#include <concepts>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"

namespace reident {

// ---------------------------------------------------------------------------
// Four-level ordinal scales
// ---------------------------------------------------------------------------

// Impact of disclosure, rated per impact type (bodily/material/moral).
enum class SeverityLevel { kNegligible = 1, kLimited, kSignificant, kMaximum };

// The global severity of a rating uses the same scale as its components.
using GlobalSeverityLevel = SeverityLevel;

// How readily an attribute can be found in an auxiliary dataset.
enum class ExposureLevel {
  kInternalRestricted = 1,
  kInternalExtended,
  kExternalRestricted,
  kExternalExtended,
};

// Banded Discrimination Rate.
enum class InferenceLevel { kWeak = 1, kModerate, kSevere, kCritical };

// Likelihood of an attack succeeding, combining exposure and inference.
enum class ExploitabilityLevel {
  kVeryDifficult = 1,
  kDifficult,
  kEasy,
  kVeryEasy
};

enum class RiskLevel { kLow = 1, kModerate, kHigh, kCritical };

template <typename Level>
struct ScaleTraits;

template <>
struct ScaleTraits<SeverityLevel> {
  static constexpr std::string_view kName = "severity";
  static constexpr std::array<std::string_view, 4> kLabels = {
      "Negligible", "Limited", "Significant", "Maximum"};
};

template <>
struct ScaleTraits<ExposureLevel> {
  static constexpr std::string_view kName = "exposure";
  static constexpr std::array<std::string_view, 4> kLabels = {"IR", "IE", "ER",
                                                              "EE"};
};

template <>
struct ScaleTraits<InferenceLevel> {
  static constexpr std::string_view kName = "inference";
  static constexpr std::array<std::string_view, 4> kLabels = {
      "Weak", "Moderate", "Severe", "Critical"};
};

template <>
struct ScaleTraits<ExploitabilityLevel> {
  static constexpr std::string_view kName = "exploitability";
  static constexpr std::array<std::string_view, 4> kLabels = {
      "Very Difficult", "Difficult", "Easy", "Very Easy"};
};

template <>
struct ScaleTraits<RiskLevel> {
  static constexpr std::string_view kName = "risk";
  static constexpr std::array<std::string_view, 4> kLabels = {
      "Low", "Moderate", "High", "Critical"};
};

template <typename Level>
concept FourLevelScale = requires {
  { ScaleTraits<Level>::kLabels[0] } -> std::convertible_to<std::string_view>;
  { ScaleTraits<Level>::kName } -> std::convertible_to<std::string_view>;
};

template <FourLevelScale Level>
constexpr int LevelValue(Level level) {
  return static_cast<int>(level);
}

template <FourLevelScale Level>
constexpr std::string_view LevelLabel(Level level) {
  return ScaleTraits<Level>::kLabels[static_cast<size_t>(LevelValue(level) -
                                                         1)];
}

// "4-Critical", the rendering used everywhere a level is shown to a human.
template <FourLevelScale Level>
std::string FormatLevel(Level level) {
  return std::to_string(LevelValue(level)) + "-" +
         std::string(LevelLabel(level));
}

template <FourLevelScale Level>
constexpr Level MaxLevel(Level a, Level b) {
  return LevelValue(a) >= LevelValue(b) ? a : b;
}

namespace internal {
absl::Status OutOfRangeLevel(std::string_view scale, int value);
absl::Status UnknownLevelLabel(std::string_view scale, std::string_view label);
// Lower-cases and maps '_' and '-' to ' ' so "very_easy" matches "Very Easy".
std::string NormalizeLabel(std::string_view label);
}  // namespace internal

template <FourLevelScale Level>
absl::StatusOr<Level> LevelFromValue(int value) {
  if (value < 1 || value > 4) {
    return internal::OutOfRangeLevel(ScaleTraits<Level>::kName, value);
  }
  return static_cast<Level>(value);
}

// Case-insensitive match against the scale's canonical labels.
template <FourLevelScale Level>
absl::StatusOr<Level> LevelFromLabel(std::string_view label) {
  const std::string wanted = internal::NormalizeLabel(label);
  for (int v = 1; v <= 4; ++v) {
    if (internal::NormalizeLabel(ScaleTraits<Level>::kLabels[v - 1]) ==
        wanted) {
      return static_cast<Level>(v);
    }
  }
  return internal::UnknownLevelLabel(ScaleTraits<Level>::kName, label);
}

// Exposure labels in any accepted spelling: the canonical IR/IE/ER/EE, the
// transposed RI/EI variants, and the long snake_case names.
absl::StatusOr<ExposureLevel> ParseExposureLabel(std::string_view label);

std::string_view ExposureLongName(ExposureLevel level);

// ---------------------------------------------------------------------------
// Severity
// ---------------------------------------------------------------------------

struct SeverityRating {
  SeverityLevel bodily = SeverityLevel::kNegligible;
  SeverityLevel material = SeverityLevel::kNegligible;
  SeverityLevel moral = SeverityLevel::kNegligible;

  friend bool operator==(const SeverityRating&,
                         const SeverityRating&) = default;
};

// Max over the three impact types.
GlobalSeverityLevel GlobalSeverity(const SeverityRating& rating);

// ---------------------------------------------------------------------------
// Attributes
// ---------------------------------------------------------------------------

enum class AttributeRole { kIdentifier, kQuasiIdentifier, kSensitive, kOther };

std::string_view RoleName(AttributeRole role);
absl::StatusOr<AttributeRole> ParseRole(std::string_view name);

struct AttributeMeta {
  std::string name;
  AttributeRole role = AttributeRole::kOther;
  // Required for quasi-identifiers.
  std::optional<ExposureLevel> exposure;
  // Required for sensitive attributes.
  std::optional<SeverityRating> severity;
  // Per-value overrides of `severity`, keyed by cell value.
  std::map<std::string, SeverityRating> value_severity;

  friend bool operator==(const AttributeMeta&, const AttributeMeta&) = default;
};

// ---------------------------------------------------------------------------
// Dataset
// ---------------------------------------------------------------------------

// Immutable table of categorical string cells. Copies share storage.
class Dataset {
 public:
  using Row = std::vector<std::string>;

  // Fails when attribute names are empty or duplicated, or when a row's
  // width differs from the header.
  static absl::StatusOr<Dataset> Create(std::vector<std::string> attributes,
                                        std::vector<Row> rows,
                                        std::string source_label = "");

  const std::vector<std::string>& attributes() const {
    return table_->attributes;
  }
  const std::vector<Row>& rows() const { return table_->rows; }
  const std::string& source_label() const { return table_->source_label; }

  size_t row_count() const { return table_->rows.size(); }
  size_t attribute_count() const { return table_->attributes.size(); }

  std::optional<size_t> AttributeIndex(std::string_view name) const;

  const std::string& cell(size_t row, size_t column) const {
    return table_->rows[row][column];
  }

  // Cell-for-cell equality; the source label is ignored.
  bool SameContent(const Dataset& other) const;

 private:
  struct Table {
    std::vector<std::string> attributes;
    std::vector<Row> rows;
    std::string source_label;
  };

  explicit Dataset(std::shared_ptr<const Table> table)
      : table_(std::move(table)) {}

  std::shared_ptr<const Table> table_;
};

// ---------------------------------------------------------------------------
// Scale matrices
// ---------------------------------------------------------------------------

// A 4x4 lookup combining two ordinal levels into a third. Cells are indexed
// by (row level, column level), both 1-based. Every cell lies in 1..4 and the
// grid never decreases along a row or down a column.
class ScaleMatrix {
 public:
  using Grid = std::array<std::array<int, 4>, 4>;

  static absl::StatusOr<ScaleMatrix> Create(std::string name,
                                            const Grid& cells);

  const std::string& name() const { return name_; }
  const Grid& cells() const { return cells_; }

  int Lookup(int row_level, int column_level) const {
    return cells_[static_cast<size_t>(row_level - 1)]
                 [static_cast<size_t>(column_level - 1)];
  }

  friend bool operator==(const ScaleMatrix&, const ScaleMatrix&) = default;

 private:
  ScaleMatrix(std::string name, const Grid& cells)
      : name_(std::move(name)), cells_(cells) {}

  std::string name_;
  Grid cells_;
};

// ---------------------------------------------------------------------------
// Assessment options
// ---------------------------------------------------------------------------

// How quasi-identifiers are grouped into combined attack surfaces.
enum class CombinationStrategy { kPerLevel, kCumulative, kExplicit };

std::string_view StrategyName(CombinationStrategy strategy);
absl::StatusOr<CombinationStrategy> ParseStrategy(std::string_view name);

struct AssessmentOptions {
  // Records whose sensitive value is at least this severe are flagged.
  SeverityLevel flag_threshold = SeverityLevel::kSignificant;
  CombinationStrategy strategy = CombinationStrategy::kPerLevel;
  std::vector<std::vector<std::string>> explicit_combinations;

  friend bool operator==(const AssessmentOptions&,
                         const AssessmentOptions&) = default;
};

// ---------------------------------------------------------------------------
// Metadata validation
// ---------------------------------------------------------------------------

struct Issue {
  std::string attribute;
  std::string message;

  std::string ToString() const;
  friend bool operator==(const Issue&, const Issue&) = default;
};

struct ValidationOutcome {
  std::vector<Issue> errors;
  std::vector<Issue> warnings;

  bool ok() const { return errors.empty(); }
};

// Cross-checks metadata against the dataset header. Never aborts; the caller
// decides what to do with the collected errors and warnings.
ValidationOutcome ValidateMeta(const Dataset& dataset,
                               std::span<const AttributeMeta> meta);

}  // namespace reident

#endif  // REIDENT_MODEL_H_
