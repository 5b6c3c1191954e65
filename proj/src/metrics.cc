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

#include "reident/metrics.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <set>
#include <string_view>
#include <unordered_map>
#include <utility>

#include "absl/status/status.h"
#include "fmt/format.h"

namespace reident {
namespace {

absl::StatusOr<size_t> ColumnOf(const Dataset& dataset,
                                std::string_view attribute) {
  std::optional<size_t> column = dataset.AttributeIndex(attribute);
  if (!column) {
    return absl::NotFoundError(
        fmt::format("unknown attribute \"{}\"", attribute));
  }
  return *column;
}

absl::StatusOr<std::vector<size_t>> ColumnsOf(
    const Dataset& dataset, std::span<const std::string> attributes) {
  if (attributes.empty()) {
    return absl::InvalidArgumentError("quasi-identifier set is empty");
  }
  std::vector<size_t> columns;
  std::set<std::string_view> seen;
  for (const std::string& attribute : attributes) {
    if (!seen.insert(attribute).second) {
      return absl::InvalidArgumentError(fmt::format(
          "attribute \"{}\" appears twice in the quasi-identifier set",
          attribute));
    }
    absl::StatusOr<size_t> column = ColumnOf(dataset, attribute);
    if (!column.ok()) return column.status();
    columns.push_back(*column);
  }
  return columns;
}

absl::Status CheckDisjoint(std::span<const std::string> qi_set,
                           const std::string& sensitive) {
  if (std::find(qi_set.begin(), qi_set.end(), sensitive) != qi_set.end()) {
    return absl::InvalidArgumentError(fmt::format(
        "sensitive attribute \"{}\" is also in the quasi-identifier set",
        sensitive));
  }
  return absl::OkStatus();
}

absl::Status CheckNotEmpty(const Dataset& dataset) {
  if (dataset.row_count() == 0) {
    return absl::FailedPreconditionError("dataset has no rows");
  }
  return absl::OkStatus();
}

// Every entropy in this file goes through CountValues and EntropyOfCounts, so
// two identical row sets always produce bitwise-identical entropies. That is
// what makes a constant quasi-identifier score exactly 0 and a set of pure
// classes exactly 1.
std::vector<int64_t> CountValues(const Dataset& dataset,
                                 std::span<const size_t> rows, size_t column) {
  std::unordered_map<std::string_view, size_t> slot;
  std::vector<int64_t> counts;
  for (size_t r : rows) {
    auto [it, inserted] =
        slot.try_emplace(dataset.cell(r, column), counts.size());
    if (inserted) counts.push_back(0);
    ++counts[it->second];
  }
  return counts;
}

double EntropyOfCounts(std::span<const int64_t> counts) {
  int64_t total = 0;
  for (int64_t c : counts) total += c;
  if (total <= 0) return 0.0;
  double h = 0.0;
  for (int64_t c : counts) {
    if (c <= 0) continue;
    const double p = static_cast<double>(c) / static_cast<double>(total);
    h -= p * std::log2(p);
  }
  return std::max(h, 0.0);
}

std::vector<size_t> AllRows(const Dataset& dataset) {
  std::vector<size_t> rows(dataset.row_count());
  for (size_t r = 0; r < rows.size(); ++r) rows[r] = r;
  return rows;
}

double ConditionalEntropyOf(const Dataset& dataset,
                            const EquivalenceClassing& classing,
                            size_t target) {
  const double n = static_cast<double>(dataset.row_count());
  double h = 0.0;
  for (const EquivalenceClass& cls : classing.classes) {
    const double weight = static_cast<double>(cls.row_indices.size()) / n;
    h +=
        weight * EntropyOfCounts(CountValues(dataset, cls.row_indices, target));
  }
  return h;
}

// 1 - part / whole, clamped to [0, 1]; a zero `whole` scores 1.
double RatioScore(double part, double whole) {
  if (whole == 0.0) return 1.0;
  return std::clamp(1.0 - part / whole, 0.0, 1.0);
}

struct KeyHash {
  size_t operator()(const std::vector<std::string_view>& key) const {
    size_t h = key.size();
    for (std::string_view part : key) {
      h ^= std::hash<std::string_view>{}(part) + 0x9e3779b97f4a7c15ULL +
           (h << 6) + (h >> 2);
    }
    return h;
  }
};

}  // namespace

absl::StatusOr<EquivalenceClassing> EquivalenceClasses(
    const Dataset& dataset, std::span<const std::string> qi_set) {
  absl::StatusOr<std::vector<size_t>> columns = ColumnsOf(dataset, qi_set);
  if (!columns.ok()) return columns.status();
  if (absl::Status s = CheckNotEmpty(dataset); !s.ok()) return s;

  EquivalenceClassing classing;
  classing.qi_set.assign(qi_set.begin(), qi_set.end());
  classing.row_class.resize(dataset.row_count());

  std::unordered_map<std::vector<std::string_view>, size_t, KeyHash> index;
  std::vector<std::string_view> key(columns->size());
  for (size_t r = 0; r < dataset.row_count(); ++r) {
    for (size_t i = 0; i < columns->size(); ++i) {
      key[i] = dataset.cell(r, (*columns)[i]);
    }
    auto [it, inserted] = index.try_emplace(key, classing.classes.size());
    if (inserted) {
      EquivalenceClass cls;
      cls.key.assign(key.begin(), key.end());
      classing.classes.push_back(std::move(cls));
    }
    classing.classes[it->second].row_indices.push_back(r);
    classing.row_class[r] = it->second;
  }
  return classing;
}

absl::StatusOr<int64_t> KAnonymity(const Dataset& dataset,
                                   std::span<const std::string> qi_set) {
  absl::StatusOr<EquivalenceClassing> classing =
      EquivalenceClasses(dataset, qi_set);
  if (!classing.ok()) return classing.status();
  int64_t k = std::numeric_limits<int64_t>::max();
  for (const EquivalenceClass& cls : classing->classes) {
    k = std::min(k, static_cast<int64_t>(cls.row_indices.size()));
  }
  return k;
}

absl::StatusOr<int64_t> DistinctLDiversity(const Dataset& dataset,
                                           std::span<const std::string> qi_set,
                                           const std::string& sensitive) {
  if (absl::Status s = CheckDisjoint(qi_set, sensitive); !s.ok()) return s;
  absl::StatusOr<size_t> target = ColumnOf(dataset, sensitive);
  if (!target.ok()) return target.status();
  absl::StatusOr<EquivalenceClassing> classing =
      EquivalenceClasses(dataset, qi_set);
  if (!classing.ok()) return classing.status();
  int64_t l = std::numeric_limits<int64_t>::max();
  for (const EquivalenceClass& cls : classing->classes) {
    l = std::min(l, static_cast<int64_t>(
                        CountValues(dataset, cls.row_indices, *target).size()));
  }
  return l;
}

absl::StatusOr<double> Entropy(std::span<const int64_t> counts) {
  for (int64_t c : counts) {
    if (c < 0) {
      return absl::InvalidArgumentError(fmt::format("negative count {}", c));
    }
  }
  return EntropyOfCounts(counts);
}

absl::StatusOr<double> ConditionalEntropy(
    const Dataset& dataset, const std::string& target,
    std::span<const std::string> given_set) {
  absl::StatusOr<size_t> column = ColumnOf(dataset, target);
  if (!column.ok()) return column.status();
  if (absl::Status s = CheckNotEmpty(dataset); !s.ok()) return s;
  if (given_set.empty()) {
    return EntropyOfCounts(CountValues(dataset, AllRows(dataset), *column));
  }
  absl::StatusOr<EquivalenceClassing> classing =
      EquivalenceClasses(dataset, given_set);
  if (!classing.ok()) return classing.status();
  return ConditionalEntropyOf(dataset, *classing, *column);
}

absl::StatusOr<DrResult> DiscriminationRate(const Dataset& dataset,
                                            std::span<const std::string> qi_set,
                                            const std::string& sensitive) {
  if (absl::Status s = CheckDisjoint(qi_set, sensitive); !s.ok()) return s;
  absl::StatusOr<size_t> target = ColumnOf(dataset, sensitive);
  if (!target.ok()) return target.status();
  absl::StatusOr<EquivalenceClassing> classing =
      EquivalenceClasses(dataset, qi_set);
  if (!classing.ok()) return classing.status();

  DrResult result;
  result.qi_set.assign(qi_set.begin(), qi_set.end());
  result.sensitive = sensitive;
  result.h_s = EntropyOfCounts(CountValues(dataset, AllRows(dataset), *target));
  result.h_s_given_qi = ConditionalEntropyOf(dataset, *classing, *target);
  result.dr = RatioScore(result.h_s_given_qi, result.h_s);
  absl::StatusOr<InferenceLevel> band = Band(result.dr);
  if (!band.ok()) return band.status();
  result.inference = *band;
  return result;
}

absl::StatusOr<double> ClassInference(const Dataset& dataset,
                                      const EquivalenceClass& cls,
                                      const std::string& sensitive) {
  absl::StatusOr<size_t> target = ColumnOf(dataset, sensitive);
  if (!target.ok()) return target.status();
  if (absl::Status s = CheckNotEmpty(dataset); !s.ok()) return s;
  for (size_t r : cls.row_indices) {
    if (r >= dataset.row_count()) {
      return absl::OutOfRangeError(fmt::format(
          "class row {} out of range for {} rows", r, dataset.row_count()));
    }
  }
  const double h_s =
      EntropyOfCounts(CountValues(dataset, AllRows(dataset), *target));
  const double h_class =
      EntropyOfCounts(CountValues(dataset, cls.row_indices, *target));
  return RatioScore(h_class, h_s);
}

absl::StatusOr<double> ValueInference(const Dataset& dataset,
                                      std::span<const std::string> qi_set,
                                      std::span<const std::string> key,
                                      const std::string& sensitive) {
  if (absl::Status s = CheckDisjoint(qi_set, sensitive); !s.ok()) return s;
  if (key.size() != qi_set.size()) {
    return absl::InvalidArgumentError(
        fmt::format("key has {} values for {} quasi-identifiers", key.size(),
                    qi_set.size()));
  }
  absl::StatusOr<EquivalenceClassing> classing =
      EquivalenceClasses(dataset, qi_set);
  if (!classing.ok()) return classing.status();
  for (const EquivalenceClass& cls : classing->classes) {
    if (std::equal(cls.key.begin(), cls.key.end(), key.begin(), key.end())) {
      return ClassInference(dataset, cls, sensitive);
    }
  }
  return absl::NotFoundError("unknown class: no row has this key");
}

absl::StatusOr<InferenceLevel> Band(double dr) {
  if (!(dr >= 0.0 && dr <= 1.0)) {
    return absl::InvalidArgumentError(
        fmt::format("discrimination rate {} outside [0, 1]", dr));
  }
  if (dr < 0.25) return InferenceLevel::kWeak;
  if (dr < 0.5) return InferenceLevel::kModerate;
  if (dr < 0.75) return InferenceLevel::kSevere;
  return InferenceLevel::kCritical;
}

}  // namespace reident
