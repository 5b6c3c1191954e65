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

// Exact, frequency-based privacy metrics over a Dataset. All probabilities are
// empirical frequencies from the dataset itself and entropies are in bits.

#ifndef REIDENT_METRICS_H_
#define REIDENT_METRICS_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "reident/model.h"

namespace reident {

struct EquivalenceClass {
  std::vector<std::string> key;
  std::vector<size_t> row_indices;
};

// Rows grouped by exact equality of their projection onto `qi_set`. Classes
// appear in order of their first row.
struct EquivalenceClassing {
  std::vector<std::string> qi_set;
  std::vector<EquivalenceClass> classes;
  // row_class[r] is the index into `classes` holding row r.
  std::vector<size_t> row_class;
};

// Discrimination Rate of a quasi-identifier set with respect to one sensitive
// attribute: 1 - H(S|QI) / H(S).
struct DrResult {
  std::vector<std::string> qi_set;
  std::string sensitive;
  double h_s = 0.0;
  double h_s_given_qi = 0.0;
  double dr = 0.0;
  InferenceLevel inference = InferenceLevel::kWeak;

  // H(S) = 0: the sensitive attribute is constant and dr is pinned to 1.
  bool degenerate() const { return h_s == 0.0; }
};

absl::StatusOr<EquivalenceClassing> EquivalenceClasses(
    const Dataset& dataset, std::span<const std::string> qi_set);

// Smallest equivalence class size.
absl::StatusOr<int64_t> KAnonymity(const Dataset& dataset,
                                   std::span<const std::string> qi_set);

// Smallest number of distinct sensitive values found in any class.
absl::StatusOr<int64_t> DistinctLDiversity(const Dataset& dataset,
                                           std::span<const std::string> qi_set,
                                           const std::string& sensitive);

// Shannon entropy, in bits, of the distribution given by `counts`.
absl::StatusOr<double> Entropy(std::span<const int64_t> counts);

// H(target | given_set).
absl::StatusOr<double> ConditionalEntropy(
    const Dataset& dataset, const std::string& target,
    std::span<const std::string> given_set);

absl::StatusOr<DrResult> DiscriminationRate(const Dataset& dataset,
                                            std::span<const std::string> qi_set,
                                            const std::string& sensitive);

// Per-class score 1 - H(S within class) / H(S), clamped to [0, 1]. `key` must
// be the key of an existing class under `qi_set`.
absl::StatusOr<double> ValueInference(const Dataset& dataset,
                                      std::span<const std::string> qi_set,
                                      std::span<const std::string> key,
                                      const std::string& sensitive);

// Same as above for a class already computed by EquivalenceClasses.
absl::StatusOr<double> ClassInference(const Dataset& dataset,
                                      const EquivalenceClass& cls,
                                      const std::string& sensitive);

// Inference band for a DR. Each boundary belongs to the upper band:
// [0, .25) weak, [.25, .5) moderate, [.5, .75) severe, [.75, 1] critical.
absl::StatusOr<InferenceLevel> Band(double dr);

}  // namespace reident

#endif  // REIDENT_METRICS_H_
