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

#include "reident/engine.h"

#include <random>
#include <string>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "oracle.h"
#include "reident/fixtures.h"
#include "reident/report.h"

namespace reident {
namespace {

using ::testing::AnyOf;
using ::testing::Contains;
using ::testing::ElementsAre;
using ::testing::HasSubstr;
using ::testing::Not;

AttributeMeta Qi(std::string name, ExposureLevel exposure) {
  return {.name = std::move(name),
          .role = AttributeRole::kQuasiIdentifier,
          .exposure = exposure};
}

AttributeMeta Sensitive(std::string name, SeverityLevel moral) {
  return {.name = std::move(name),
          .role = AttributeRole::kSensitive,
          .severity = SeverityRating{.moral = moral}};
}

std::vector<std::string> Names(const std::vector<QiCombination>& combos) {
  std::vector<std::string> out;
  for (const QiCombination& c : combos) out.push_back(c.DisplayName());
  return out;
}

AssessmentReport AssessFixture(std::string_view name) {
  MetadataDocument doc = oracle::FixtureMetadata(name);
  return Assess(fixtures::Table(name).value(), doc.attributes, doc.options,
                RiskMatrices::Defaults())
      .value();
}

TEST(MatrixTest, DefaultExploitabilityIsFloorMean) {
  const ScaleMatrix m = DefaultExploitabilityMatrix();
  for (int e = 1; e <= 4; ++e) {
    for (int i = 1; i <= 4; ++i) EXPECT_EQ(m.Lookup(e, i), (e + i) / 2);
  }
  EXPECT_EQ(Exploitability(ExposureLevel::kExternalExtended,
                           InferenceLevel::kCritical, m),
            ExploitabilityLevel::kVeryEasy);
  EXPECT_EQ(Exploitability(ExposureLevel::kInternalExtended,
                           InferenceLevel::kCritical, m),
            ExploitabilityLevel::kEasy);
  EXPECT_EQ(Exploitability(ExposureLevel::kInternalExtended,
                           InferenceLevel::kSevere, m),
            ExploitabilityLevel::kDifficult);
}

TEST(MatrixTest, DefaultRiskBandsTheProduct) {
  const ScaleMatrix m = DefaultRiskMatrix();
  for (int l = 1; l <= 4; ++l) {
    for (int s = 1; s <= 4; ++s) {
      const int p = l * s;
      EXPECT_EQ(m.Lookup(l, s), p <= 2 ? 1 : p <= 6 ? 2 : p <= 9 ? 3 : 4);
    }
  }
  EXPECT_EQ(Risk(ExploitabilityLevel::kVeryEasy, SeverityLevel::kMaximum, m),
            RiskLevel::kCritical);
  EXPECT_EQ(Risk(ExploitabilityLevel::kEasy, SeverityLevel::kMaximum, m),
            RiskLevel::kCritical);
  EXPECT_EQ(
      Risk(ExploitabilityLevel::kVeryDifficult, SeverityLevel::kNegligible, m),
      RiskLevel::kLow);
}

TEST(MatrixTest, DefaultsAreMonotone) {
  const RiskMatrices m = RiskMatrices::Defaults();
  for (int a = 1; a <= 4; ++a) {
    for (int b = 1; b <= 4; ++b) {
      for (int a2 = a; a2 <= 4; ++a2) {
        for (int b2 = b; b2 <= 4; ++b2) {
          EXPECT_GE(m.risk.Lookup(a2, b2), m.risk.Lookup(a, b));
          EXPECT_GE(m.exploitability.Lookup(a2, b2),
                    m.exploitability.Lookup(a, b));
        }
      }
    }
  }
}

TEST(SeverityOfValueTest, OverridesAndFallback) {
  const MetadataDocument doc = oracle::FixtureMetadata("initial");
  EXPECT_EQ(SeverityOfValue(doc.attributes, "Disease", "Colds").value(),
            SeverityLevel::kNegligible);
  EXPECT_EQ(SeverityOfValue(doc.attributes, "Disease", "HIV").value(),
            SeverityLevel::kMaximum);
  EXPECT_EQ(SeverityOfValue(doc.attributes, "Disease", "Measles").value(),
            SeverityLevel::kMaximum);
  EXPECT_EQ(SeverityOfValue(doc.attributes, "Age", "23").status().code(),
            absl::StatusCode::kInvalidArgument);
  EXPECT_EQ(SeverityOfValue(doc.attributes, "Weight", "80").status().code(),
            absl::StatusCode::kNotFound);
}

TEST(BuildCombinationsTest, PerLevel) {
  const MetadataDocument doc = oracle::FixtureMetadata("initial");
  std::vector<QiCombination> combos =
      BuildCombinations(doc.attributes, CombinationStrategy::kPerLevel, {})
          .value();
  EXPECT_THAT(Names(combos),
              ElementsAre("Age", "Gender", "Country", "Admission Date",
                          "Blood Type", "Age/Gender/Country"));
  EXPECT_EQ(combos.back().exposure, ExposureLevel::kExternalExtended);
  EXPECT_EQ(combos.back().origin, CombinationOrigin::kPerLevelGroup);
  EXPECT_EQ(combos[3].exposure, ExposureLevel::kInternalExtended);
  EXPECT_EQ(combos[4].exposure, ExposureLevel::kInternalRestricted);
  EXPECT_EQ(combos[4].origin, CombinationOrigin::kIndividual);
}

TEST(BuildCombinationsTest, Cumulative) {
  const MetadataDocument doc = oracle::FixtureMetadata("initial");
  std::vector<QiCombination> combos =
      BuildCombinations(doc.attributes, CombinationStrategy::kCumulative, {})
          .value();
  EXPECT_THAT(
      Names(combos),
      ElementsAre("Age", "Gender", "Country", "Admission Date", "Blood Type",
                  "Age/Gender/Country", "Age/Gender/Country/Admission Date",
                  "Age/Gender/Country/Admission Date/Blood Type"));
  EXPECT_EQ(combos.back().exposure, ExposureLevel::kExternalExtended);
  EXPECT_EQ(combos.back().origin, CombinationOrigin::kCumulativeGroup);
}

TEST(BuildCombinationsTest, ExplicitUsesMaxExposureAndDeclarationOrder) {
  const MetadataDocument doc = oracle::FixtureMetadata("initial");
  const std::vector<std::vector<std::string>> sets = {
      {"Blood Type", "Admission Date"},
      {"Admission Date", "Blood Type"},
      {"Age"}};
  std::vector<QiCombination> combos =
      BuildCombinations(doc.attributes, CombinationStrategy::kExplicit, sets)
          .value();
  ASSERT_EQ(combos.size(), 6u);
  EXPECT_EQ(combos.back().DisplayName(), "Admission Date/Blood Type");
  EXPECT_EQ(combos.back().exposure, ExposureLevel::kInternalExtended);
  EXPECT_EQ(combos.back().origin, CombinationOrigin::kExplicit);
}

TEST(BuildCombinationsTest, ExplicitErrors) {
  const MetadataDocument doc = oracle::FixtureMetadata("initial");
  auto error = [&](std::vector<std::vector<std::string>> sets) {
    return std::string(
        BuildCombinations(doc.attributes, CombinationStrategy::kExplicit, sets)
            .status()
            .message());
  };
  EXPECT_THAT(error({{}}), HasSubstr("explicit combination 1 is empty"));
  EXPECT_THAT(
      error({{"Age"}, {"Height"}}),
      HasSubstr("explicit combination 2: unknown attribute \"Height\""));
  EXPECT_THAT(error({{"Age", "Disease"}}),
              HasSubstr("\"Disease\" is not a quasi-identifier"));
}

TEST(BuildCombinationsTest, SingleQuasiIdentifier) {
  const std::vector<AttributeMeta> meta = {
      Qi("A", ExposureLevel::kExternalRestricted),
      Sensitive("S", SeverityLevel::kMaximum)};
  for (CombinationStrategy s :
       {CombinationStrategy::kPerLevel, CombinationStrategy::kCumulative}) {
    EXPECT_EQ(BuildCombinations(meta, s, {})->size(), 1u);
  }
  const std::vector<std::vector<std::string>> sets = {{"A"}};
  EXPECT_EQ(
      BuildCombinations(meta, CombinationStrategy::kExplicit, sets)->size(),
      1u);
  EXPECT_FALSE(BuildCombinations({}, CombinationStrategy::kPerLevel, {}).ok());
}

TEST(CheckAssessableTest, Preconditions) {
  Dataset one_row = Dataset::Create({"A", "S"}, {{"x", "y"}}).value();
  const std::vector<AttributeMeta> no_sensitive = {
      Qi("A", ExposureLevel::kExternalExtended),
      {.name = "S", .role = AttributeRole::kOther}};
  ValidationOutcome outcome = CheckAssessable(one_row, no_sensitive, {});
  EXPECT_THAT(
      outcome.errors,
      ElementsAre(Issue{"", "no sensitive attribute declared"},
                  Issue{"", "dataset has 1 row(s); at least 2 are required"}));

  const std::vector<AttributeMeta> no_qi = {
      {.name = "A", .role = AttributeRole::kOther},
      Sensitive("S", SeverityLevel::kLimited)};
  outcome = CheckAssessable(one_row, no_qi, {});
  EXPECT_THAT(outcome.errors,
              Contains(Issue{"", "no quasi-identifiers declared"}));
  EXPECT_TRUE(outcome.warnings.empty());

  Dataset two_rows =
      Dataset::Create({"A", "S"}, {{"x", "y"}, {"z", "w"}}).value();
  const std::vector<AttributeMeta> good = {
      Qi("A", ExposureLevel::kExternalExtended),
      Sensitive("S", SeverityLevel::kLimited)};
  AssessmentOptions bad_explicit{.strategy = CombinationStrategy::kExplicit,
                                 .explicit_combinations = {{"S"}}};
  outcome = CheckAssessable(two_rows, good, bad_explicit);
  ASSERT_EQ(outcome.errors.size(), 1u);
  EXPECT_THAT(outcome.errors[0].message, HasSubstr("not a quasi-identifier"));
  EXPECT_EQ(Assess(two_rows, good, bad_explicit, RiskMatrices::Defaults())
                .status()
                .code(),
            absl::StatusCode::kFailedPrecondition);
}

TEST(AssessTest, HipaaTable) {
  const AssessmentReport report = AssessFixture("hipaa");
  EXPECT_EQ(report.overall_risk, RiskLevel::kCritical);
  ASSERT_FALSE(report.exploitability_rows.empty());
  const ExploitabilityRow& top = report.exploitability_rows.front();
  EXPECT_EQ(top.combination.DisplayName(), "Age/Gender/Country");
  EXPECT_EQ(top.combination.exposure, ExposureLevel::kExternalExtended);
  EXPECT_EQ(top.inference(), InferenceLevel::kCritical);
  EXPECT_EQ(top.exploitability, ExploitabilityLevel::kVeryEasy);
  EXPECT_EQ(top.dr.dr, 1.0);
  const RiskRow& top_risk = report.risk_rows.front();
  EXPECT_EQ(top_risk.severity, SeverityLevel::kMaximum);
  EXPECT_EQ(top_risk.risk, RiskLevel::kCritical);
  EXPECT_EQ(top_risk.description,
            "Re-identification risk of Disease via Age/Gender/Country (4-EE)");
  EXPECT_EQ(report.exploitability_rows.size(), report.risk_rows.size());
  EXPECT_THAT(
      report.warnings,
      Contains(HasSubstr("matches the bundled 'hipaa' reference table")));
}

TEST(AssessTest, RowsAreSortedWorstFirst) {
  const AssessmentReport report = AssessFixture("hipaa");
  const auto& rows = report.exploitability_rows;
  for (size_t i = 1; i < rows.size(); ++i) {
    const int prev = LevelValue(rows[i - 1].exploitability);
    const int cur = LevelValue(rows[i].exploitability);
    EXPECT_GE(prev, cur);
    if (prev == cur) {
      EXPECT_GE(LevelValue(rows[i - 1].combination.exposure),
                LevelValue(rows[i].combination.exposure));
    }
  }
}

TEST(AssessTest, InitialTableFlagsSevereValues) {
  const AssessmentReport report = AssessFixture("initial");
  std::vector<size_t> rows;
  for (const FlaggedRecord& f : report.flagged_records) {
    rows.push_back(f.row_index);
    EXPECT_EQ(f.sensitive, "Disease");
    EXPECT_THAT(f.combination, ElementsAre("Age", "Gender", "Country"));
    EXPECT_GE(LevelValue(f.value_severity), 3);
  }
  EXPECT_THAT(rows, ElementsAre(5, 6, 7, 8));
  EXPECT_EQ(report.flagged_records[1].sensitive_value, "Diabetes");
  EXPECT_EQ(report.flagged_records[1].value_severity,
            SeverityLevel::kSignificant);
  EXPECT_EQ(report.flagged_records[1].class_inference, 1.0);

  ASSERT_EQ(report.attribute_severity.size(), 6u);
  for (const AttributeSeverityEntry& e : report.attribute_severity) {
    EXPECT_EQ(e.global, e.attribute == "Disease" ? SeverityLevel::kMaximum
                                                 : SeverityLevel::kNegligible);
  }
}

TEST(AssessTest, ThresholdControlsFlags) {
  MetadataDocument doc = oracle::FixtureMetadata("initial");
  doc.options.flag_threshold = SeverityLevel::kMaximum;
  AssessmentReport report =
      Assess(fixtures::Table("initial").value(), doc.attributes, doc.options,
             RiskMatrices::Defaults())
          .value();
  EXPECT_EQ(report.flagged_records.size(), 3u);
  doc.options.flag_threshold = SeverityLevel::kNegligible;
  report = Assess(fixtures::Table("initial").value(), doc.attributes,
                  doc.options, RiskMatrices::Defaults())
               .value();
  EXPECT_EQ(report.flagged_records.size(), 12u);
}

TEST(AssessTest, KanonTableCarriesReferenceNote) {
  const AssessmentReport report = AssessFixture("kanon");
  EXPECT_THAT(
      report.warnings,
      Contains(HasSubstr("matches the bundled 'kanon' reference table")));
  EXPECT_EQ(report.metrics[0].k_anonymity, 3);
  EXPECT_EQ(report.metrics[0].l_diversity, 1);
  EXPECT_EQ(report.overall_risk, RiskLevel::kCritical);
}

TEST(AssessTest, ConstantSensitiveValue) {
  Dataset d =
      Dataset::Create({"A", "B", "S"},
                      {{"1", "x", "flu"}, {"2", "y", "flu"}, {"3", "x", "flu"}})
          .value();
  const std::vector<AttributeMeta> meta = {
      Qi("A", ExposureLevel::kInternalRestricted),
      Qi("B", ExposureLevel::kInternalRestricted),
      Sensitive("S", SeverityLevel::kSignificant)};
  const RiskMatrices m = RiskMatrices::Defaults();
  AssessmentReport report = Assess(d, meta, {}, m).value();
  EXPECT_EQ(report.overall_risk,
            Risk(Exploitability(ExposureLevel::kInternalRestricted,
                                InferenceLevel::kCritical, m.exploitability),
                 SeverityLevel::kSignificant, m.risk));
  EXPECT_THAT(report.warnings, Contains(HasSubstr("H(S) = 0")));
}

TEST(AssessTest, WarnsAboutIdentifiersAndEmptyCells) {
  Dataset d = Dataset::Create({"Id", "A", "S"},
                              {{"1", "", "a"}, {"2", "x", "b"}, {"3", "", "b"}})
                  .value();
  const std::vector<AttributeMeta> meta = {
      {.name = "Id", .role = AttributeRole::kIdentifier},
      Qi("A", ExposureLevel::kExternalExtended),
      Sensitive("S", SeverityLevel::kLimited)};
  AssessmentReport report =
      Assess(d, meta, {}, RiskMatrices::Defaults()).value();
  EXPECT_THAT(report.warnings, Contains(HasSubstr("Id: identifier attribute")));
  EXPECT_THAT(report.warnings,
              Contains("A: 2 empty cell(s) treated as a distinct category"));
  for (const ExploitabilityRow& row : report.exploitability_rows) {
    EXPECT_THAT(row.combination.members, Not(Contains("Id")));
  }
}

TEST(AssessTest, MetadataOrderDoesNotMatter) {
  MetadataDocument doc = oracle::FixtureMetadata("hipaa");
  std::vector<AttributeMeta> reversed(doc.attributes.rbegin(),
                                      doc.attributes.rend());
  Dataset d = fixtures::Table("hipaa").value();
  EXPECT_EQ(
      ToJson(
          Assess(d, reversed, doc.options, RiskMatrices::Defaults()).value()),
      ToJson(AssessFixture("hipaa")));
}

TEST(AssessTest, CustomMatricesAreUsed) {
  MetadataDocument doc = oracle::FixtureMetadata("hipaa");
  ScaleMatrix::Grid lowest{};
  for (auto& row : lowest) row.fill(1);
  RiskMatrices m = RiskMatrices::Defaults();
  m.risk = ScaleMatrix::Create("risk", lowest).value();
  AssessmentReport report =
      Assess(fixtures::Table("hipaa").value(), doc.attributes, doc.options, m)
          .value();
  EXPECT_EQ(report.overall_risk, RiskLevel::kLow);
  EXPECT_EQ(report.matrices.risk, m.risk);
}

// Two attributes that reveal nothing alone but everything together.
class XorTable : public ::testing::Test {
 protected:
  XorTable()
      : dataset_(Dataset::Create({"A", "B", "S"}, {{"0", "0", "n"},
                                                   {"0", "1", "y"},
                                                   {"1", "0", "y"},
                                                   {"1", "1", "n"}})
                     .value()) {}

  RiskLevel Overall(ExposureLevel a, ExposureLevel b,
                    CombinationStrategy strategy) {
    const std::vector<AttributeMeta> meta = {
        Qi("A", a), Qi("B", b), Sensitive("S", SeverityLevel::kMaximum)};
    AssessmentOptions options{.strategy = strategy};
    if (strategy == CombinationStrategy::kExplicit) {
      options.explicit_combinations = {{"A", "B"}};
    }
    return Assess(dataset_, meta, options, RiskMatrices::Defaults())
        .value()
        .overall_risk;
  }

  Dataset dataset_;
};

TEST_F(XorTable, PerLevelGroupingCanLowerRiskWhenExposureRises) {
  // Both at IR, per_level pairs them: exploitability(1, Critical) = 2 and
  // risk(2, 4) = 3. Raising A to IE splits the pair into two weak singletons.
  EXPECT_EQ(Overall(ExposureLevel::kInternalRestricted,
                    ExposureLevel::kInternalRestricted,
                    CombinationStrategy::kPerLevel),
            RiskLevel::kHigh);
  EXPECT_EQ(Overall(ExposureLevel::kInternalExtended,
                    ExposureLevel::kInternalRestricted,
                    CombinationStrategy::kPerLevel),
            RiskLevel::kModerate);
}

TEST_F(XorTable, CumulativeAndExplicitStayMonotone) {
  for (CombinationStrategy s :
       {CombinationStrategy::kCumulative, CombinationStrategy::kExplicit}) {
    EXPECT_LE(LevelValue(Overall(ExposureLevel::kInternalRestricted,
                                 ExposureLevel::kInternalRestricted, s)),
              LevelValue(Overall(ExposureLevel::kInternalExtended,
                                 ExposureLevel::kInternalRestricted, s)));
  }
}

// Raising one exposure never lowers any exploitability or the overall risk.
TEST(AssessPropertyTest, ExposureMonotonicity) {
  std::mt19937_64 rng(99);
  int cases = 0;
  while (cases < 600) {
    Dataset d = oracle::RandomTable(rng, {.max_rows = 30, .max_attributes = 5});
    if (d.row_count() < 2) continue;
    const size_t s = d.attribute_count() - 1;
    std::vector<AttributeMeta> meta;
    for (size_t c = 0; c < s; ++c) {
      meta.push_back(
          Qi(d.attributes()[c], static_cast<ExposureLevel>(1 + rng() % 4)));
    }
    AttributeMeta sensitive =
        Sensitive(d.attributes()[s], static_cast<SeverityLevel>(1 + rng() % 4));
    meta.push_back(sensitive);

    AssessmentOptions options;
    options.strategy = rng() % 2 == 0 ? CombinationStrategy::kCumulative
                                      : CombinationStrategy::kExplicit;
    if (options.strategy == CombinationStrategy::kExplicit) {
      options.explicit_combinations.push_back(
          oracle::Names(d, oracle::RandomSubset(rng, d.attribute_count(), s)));
    }
    const size_t raised = rng() % s;
    const int before = LevelValue(*meta[raised].exposure);
    if (before == 4) continue;
    ++cases;

    const RiskMatrices m = RiskMatrices::Defaults();
    const AssessmentReport lo = Assess(d, meta, options, m).value();
    meta[raised].exposure =
        static_cast<ExposureLevel>(before + 1 + rng() % (4 - before));
    const AssessmentReport hi = Assess(d, meta, options, m).value();

    EXPECT_GE(LevelValue(hi.overall_risk), LevelValue(lo.overall_risk));
    for (const ExploitabilityRow& old_row : lo.exploitability_rows) {
      for (const ExploitabilityRow& new_row : hi.exploitability_rows) {
        if (new_row.combination.members == old_row.combination.members) {
          EXPECT_GE(LevelValue(new_row.exploitability),
                    LevelValue(old_row.exploitability));
        }
      }
    }
  }
}

TEST(AssessPropertyTest, OverallRiskIsMaxOfRows) {
  for (std::string_view name : fixtures::Names()) {
    const AssessmentReport report = AssessFixture(name);
    RiskLevel max = RiskLevel::kLow;
    for (const RiskRow& row : report.risk_rows) max = MaxLevel(max, row.risk);
    EXPECT_EQ(report.overall_risk, max) << name;
    for (const RiskRow& row : report.risk_rows) {
      EXPECT_THAT(LevelValue(row.risk), AnyOf(1, 2, 3, 4));
    }
  }
}

}  // namespace
}  // namespace reident
