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

#include "reident/fixtures.h"

#include <array>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "fmt/format.h"

namespace reident::fixtures {
namespace {

using Rows = std::vector<Dataset::Row>;

constexpr std::array<std::string_view, 3> kNames = {"initial", "kanon",
                                                    "hipaa"};

std::vector<std::string> Header() {
  return {"Age",        "Gender", "Country", "Admission Date",
          "Blood Type", "Disease"};
}

Rows InitialRows() {
  return {
      {"23", "M", "Nigeria", "2019-09-21", "A+", "Colds"},
      {"23", "M", "Cameroon", "2019-06-05", "O+", "Colds"},
      {"25", "M", "Nigeria", "2019-06-05", "O+", "Colds"},
      {"32", "F", "France", "2022-10-12", "O+", "Colds"},
      {"31", "F", "France", "2022-10-12", "O+", "Flu"},
      {"37", "F", "Spain", "2022-05-14", "AB+", "HIV"},
      {"51", "F", "Canada", "2021-04-01", "AB-", "Diabetes"},
      {"53", "F", "USA", "2021-04-01", "O-", "Cancer"},
      {"53", "F", "Mexico", "2021-04-01", "B-", "HIV"},
      {"57", "F", "Canada", "2022-04-01", "B-", "Colds"},
      {"36", "F", "Belgium", "2017-02-12", "O+", "Flu"},
      {"30", "F", "Italy", "2015-01-02", "AB-", "Flu"},
  };
}

Rows KanonRows() {
  const Dataset::Row g1 = {"2*", "M", "Africa", "2019-**-**",
                           "Positive Rehsus"};
  const Dataset::Row g2 = {"3*", "F", "Europe", "2022-**-**",
                           "Positive Rehsus"};
  const Dataset::Row g3 = {"5*", "F", "America", "2021-**-**",
                           "Negative Rehsus"};
  const std::pair<const Dataset::Row*, const char*> layout[] = {
      {&g1, "Colds"},    {&g1, "Colds"},  {&g1, "Colds"},
      {&g2, "Colds"},    {&g2, "Flu"},    {&g2, "HIV"},
      {&g3, "Diabetes"}, {&g3, "Cancer"}, {&g3, "HIV"},
  };
  Rows rows;
  for (const auto& [prefix, disease] : layout) {
    Dataset::Row row = *prefix;
    row.push_back(disease);
    rows.push_back(std::move(row));
  }
  return rows;
}

Rows HipaaRows() {
  Rows rows = InitialRows();
  for (Dataset::Row& row : rows) row[3] = row[3].substr(0, 4) + "-**-**";
  return rows;
}

constexpr std::string_view kAttributesJson = R"({
  "version": 1,
  "attributes": [
    {"name": "Age", "role": "quasi_identifier", "exposure": "EE",
     "severity": {"bodily": 1, "material": 1, "moral": 1}},
    {"name": "Gender", "role": "quasi_identifier", "exposure": "EE",
     "severity": {"bodily": 1, "material": 1, "moral": 1}},
    {"name": "Country", "role": "quasi_identifier", "exposure": "EE",
     "severity": {"bodily": 1, "material": 1, "moral": 1}},
    {"name": "Admission Date", "role": "quasi_identifier", "exposure": "IE",
     "severity": {"bodily": 1, "material": 1, "moral": 1}},
    {"name": "Blood Type", "role": "quasi_identifier", "exposure": "IR",
     "severity": {"bodily": 1, "material": 1, "moral": 1}},
    {"name": "Disease", "role": "sensitive",
     "severity": {"bodily": 1, "material": 3, "moral": 4},
     "value_severity": {
       "Colds": {"bodily": 1, "material": 1, "moral": 1},
       "Flu": {"bodily": 1, "material": 1, "moral": 1},
       "Diabetes": {"bodily": 1, "material": 3, "moral": 3},
       "HIV": {"bodily": 1, "material": 3, "moral": 4},
       "Cancer": {"bodily": 1, "material": 3, "moral": 4}
     }}
  ],
)";

constexpr std::string_view kPerLevelOptions = R"(  "options": {
    "flag_threshold": 3,
    "combination_strategy": "per_level"
  }
}
)";

constexpr std::string_view kExplicitOptions = R"(  "options": {
    "flag_threshold": 3,
    "combination_strategy": "explicit",
    "explicit_combinations": [
      ["Age", "Gender", "Country"],
      ["Admission Date", "Blood Type"]
    ]
  }
}
)";

absl::Status UnknownFixture(std::string_view name) {
  return absl::NotFoundError(fmt::format(
      "unknown fixture \"{}\" (expected initial, kanon or hipaa)", name));
}

}  // namespace

std::span<const std::string_view> Names() { return kNames; }

absl::StatusOr<Dataset> Table(std::string_view name) {
  Rows rows;
  if (name == "initial") {
    rows = InitialRows();
  } else if (name == "kanon") {
    rows = KanonRows();
  } else if (name == "hipaa") {
    rows = HipaaRows();
  } else {
    return UnknownFixture(name);
  }
  return Dataset::Create(Header(), std::move(rows),
                         fmt::format("fixture:{}", name));
}

absl::StatusOr<std::string> MetadataJson(std::string_view name) {
  if (name == "initial") {
    return fmt::format("{}{}", kAttributesJson, kPerLevelOptions);
  }
  if (name == "kanon" || name == "hipaa") {
    return fmt::format("{}{}", kAttributesJson, kExplicitOptions);
  }
  return UnknownFixture(name);
}

std::optional<std::string_view> Match(const Dataset& dataset) {
  for (std::string_view name : kNames) {
    absl::StatusOr<Dataset> table = Table(name);
    if (table.ok() && table->SameContent(dataset)) return name;
  }
  return std::nullopt;
}

std::optional<std::string> ReferenceNote(const Dataset& dataset) {
  const std::optional<std::string_view> name = Match(dataset);
  if (name == "kanon") {
    return std::string(
        "dataset matches the bundled 'kanon' reference table: its reference "
        "ratings give both combined quasi-identifier sets 4-Critical "
        "inference and rate every quasi-identifier individually at 3-Severe "
        "or 4-Critical; those ratings are illustrative and are not "
        "reproduced by the discrimination rates computed from these 9 rows");
  }
  if (name == "hipaa") {
    return std::string(
        "dataset matches the bundled 'hipaa' reference table: the reference "
        "inference ratings for Age, Country and both combined "
        "quasi-identifier sets are reproduced, while those given to Gender, "
        "Admission Date and Blood Type individually are illustrative and "
        "are not reproduced by the discrimination rates computed from these "
        "12 rows; the reference exposure table rates Blood Type 1-IR while "
        "its exploitability tables print 2-EI, and the bundled metadata "
        "uses 1-IR");
  }
  return std::nullopt;
}

}  // namespace reident::fixtures
