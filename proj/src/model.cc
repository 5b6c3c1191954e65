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

#include "reident/model.h"

#include <cctype>
#include <set>
#include <string>
#include <utility>

#include "absl/status/status.h"
#include "fmt/format.h"

namespace reident {

namespace internal {

absl::Status OutOfRangeLevel(std::string_view scale, int value) {
  return absl::OutOfRangeError(
      fmt::format("{} level {} out of range 1..4", scale, value));
}

absl::Status UnknownLevelLabel(std::string_view scale, std::string_view label) {
  return absl::InvalidArgumentError(
      fmt::format("unknown {} label \"{}\"", scale, label));
}

std::string NormalizeLabel(std::string_view label) {
  auto blank = [](char c) {
    return std::isspace(static_cast<unsigned char>(c));
  };
  while (!label.empty() && blank(label.front())) label.remove_prefix(1);
  while (!label.empty() && blank(label.back())) label.remove_suffix(1);
  std::string out(label);
  for (char& c : out) {
    if (c == '_' || c == '-') {
      c = ' ';
    } else {
      c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
  }
  return out;
}

}  // namespace internal

absl::StatusOr<ExposureLevel> ParseExposureLabel(std::string_view label) {
  const std::string key = internal::NormalizeLabel(label);
  static constexpr std::pair<std::string_view, ExposureLevel> kSpellings[] = {
      {"ir", ExposureLevel::kInternalRestricted},
      {"ri", ExposureLevel::kInternalRestricted},
      {"internal restricted", ExposureLevel::kInternalRestricted},
      {"ie", ExposureLevel::kInternalExtended},
      {"ei", ExposureLevel::kInternalExtended},
      {"internal extended", ExposureLevel::kInternalExtended},
      {"er", ExposureLevel::kExternalRestricted},
      {"external restricted", ExposureLevel::kExternalRestricted},
      {"ee", ExposureLevel::kExternalExtended},
      {"external extended", ExposureLevel::kExternalExtended},
  };
  for (const auto& [spelling, level] : kSpellings) {
    if (key == spelling) return level;
  }
  return internal::UnknownLevelLabel("exposure", label);
}

std::string_view ExposureLongName(ExposureLevel level) {
  switch (level) {
    case ExposureLevel::kInternalRestricted:
      return "internal_restricted";
    case ExposureLevel::kInternalExtended:
      return "internal_extended";
    case ExposureLevel::kExternalRestricted:
      return "external_restricted";
    case ExposureLevel::kExternalExtended:
      return "external_extended";
  }
  return "";
}

GlobalSeverityLevel GlobalSeverity(const SeverityRating& rating) {
  return MaxLevel(MaxLevel(rating.bodily, rating.material), rating.moral);
}

std::string_view RoleName(AttributeRole role) {
  switch (role) {
    case AttributeRole::kIdentifier:
      return "identifier";
    case AttributeRole::kQuasiIdentifier:
      return "quasi_identifier";
    case AttributeRole::kSensitive:
      return "sensitive";
    case AttributeRole::kOther:
      return "other";
  }
  return "";
}

absl::StatusOr<AttributeRole> ParseRole(std::string_view name) {
  for (AttributeRole role :
       {AttributeRole::kIdentifier, AttributeRole::kQuasiIdentifier,
        AttributeRole::kSensitive, AttributeRole::kOther}) {
    if (RoleName(role) == name) return role;
  }
  return absl::InvalidArgumentError(
      fmt::format("unknown role \"{}\" (expected identifier, quasi_identifier, "
                  "sensitive or other)",
                  name));
}

absl::StatusOr<Dataset> Dataset::Create(std::vector<std::string> attributes,
                                        std::vector<Row> rows,
                                        std::string source_label) {
  if (attributes.empty()) {
    return absl::InvalidArgumentError("dataset has no attributes");
  }
  std::set<std::string_view> seen;
  for (size_t i = 0; i < attributes.size(); ++i) {
    if (attributes[i].empty()) {
      return absl::InvalidArgumentError(
          fmt::format("attribute {} has an empty name", i + 1));
    }
    if (!seen.insert(attributes[i]).second) {
      return absl::InvalidArgumentError(
          fmt::format("duplicate attribute name \"{}\"", attributes[i]));
    }
  }
  for (size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != attributes.size()) {
      return absl::InvalidArgumentError(
          fmt::format("row {}: expected {} cells, got {}", r + 1,
                      attributes.size(), rows[r].size()));
    }
  }
  return Dataset(std::make_shared<const Table>(
      Table{std::move(attributes), std::move(rows), std::move(source_label)}));
}

std::optional<size_t> Dataset::AttributeIndex(std::string_view name) const {
  const auto& attrs = table_->attributes;
  for (size_t i = 0; i < attrs.size(); ++i) {
    if (attrs[i] == name) return i;
  }
  return std::nullopt;
}

bool Dataset::SameContent(const Dataset& other) const {
  return table_ == other.table_ ||
         (attributes() == other.attributes() && rows() == other.rows());
}

absl::StatusOr<ScaleMatrix> ScaleMatrix::Create(std::string name,
                                                const Grid& cells) {
  for (size_t r = 0; r < 4; ++r) {
    for (size_t c = 0; c < 4; ++c) {
      const int v = cells[r][c];
      if (v < 1 || v > 4) {
        return absl::OutOfRangeError(fmt::format(
            "{} matrix cell [{}][{}] = {} out of range 1..4", name, r, c, v));
      }
      if (c > 0 && v < cells[r][c - 1]) {
        return absl::InvalidArgumentError(fmt::format(
            "{} matrix not monotone: cell [{}][{}] = {} is below its left "
            "neighbour {}",
            name, r, c, v, cells[r][c - 1]));
      }
      if (r > 0 && v < cells[r - 1][c]) {
        return absl::InvalidArgumentError(fmt::format(
            "{} matrix not monotone: cell [{}][{}] = {} is below the cell "
            "above it {}",
            name, r, c, v, cells[r - 1][c]));
      }
    }
  }
  return ScaleMatrix(std::move(name), cells);
}

std::string_view StrategyName(CombinationStrategy strategy) {
  switch (strategy) {
    case CombinationStrategy::kPerLevel:
      return "per_level";
    case CombinationStrategy::kCumulative:
      return "cumulative";
    case CombinationStrategy::kExplicit:
      return "explicit";
  }
  return "";
}

absl::StatusOr<CombinationStrategy> ParseStrategy(std::string_view name) {
  for (CombinationStrategy s :
       {CombinationStrategy::kPerLevel, CombinationStrategy::kCumulative,
        CombinationStrategy::kExplicit}) {
    if (StrategyName(s) == name) return s;
  }
  return absl::InvalidArgumentError(fmt::format(
      "unknown combination strategy \"{}\" (expected per_level, cumulative "
      "or explicit)",
      name));
}

std::string Issue::ToString() const {
  if (attribute.empty()) return message;
  return fmt::format("{}: {}", attribute, message);
}

ValidationOutcome ValidateMeta(const Dataset& dataset,
                               std::span<const AttributeMeta> meta) {
  ValidationOutcome outcome;
  std::set<std::string_view> described;
  bool any_qi = false;

  for (const AttributeMeta& m : meta) {
    if (!described.insert(m.name).second) {
      outcome.errors.push_back({m.name, "duplicate metadata entry"});
      continue;
    }
    const std::optional<size_t> column = dataset.AttributeIndex(m.name);
    if (!column) {
      outcome.errors.push_back({m.name, "unknown attribute"});
    }
    if (m.role == AttributeRole::kQuasiIdentifier) {
      any_qi = true;
      if (!m.exposure) outcome.errors.push_back({m.name, "missing exposure"});
    }
    if (m.role == AttributeRole::kSensitive && !m.severity) {
      outcome.errors.push_back({m.name, "missing severity"});
    }
    if (column && !m.value_severity.empty()) {
      std::set<std::string_view> present;
      for (const Dataset::Row& row : dataset.rows())
        present.insert(row[*column]);
      for (const auto& [value, rating] : m.value_severity) {
        if (!present.contains(value)) {
          outcome.warnings.push_back(
              {m.name, fmt::format("unused value_severity key \"{}\"", value)});
        }
      }
    }
  }

  for (const std::string& attribute : dataset.attributes()) {
    if (!described.contains(attribute)) {
      outcome.errors.push_back({attribute, "missing metadata"});
    }
  }
  if (!any_qi) {
    outcome.warnings.push_back({"", "no quasi-identifiers declared"});
  }
  return outcome;
}

}  // namespace reident
