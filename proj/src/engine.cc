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

#include <algorithm>
#include <map>
#include <set>
#include <utility>

#include "absl/status/status.h"
#include "fmt/format.h"
#include "reident/fixtures.h"
#include "reident/report.h"

namespace reident {
namespace {

ScaleMatrix MustCreate(std::string name, const ScaleMatrix::Grid& grid) {
  return ScaleMatrix::Create(std::move(name), grid).value();
}

const AttributeMeta* Find(std::span<const AttributeMeta> meta,
                          std::string_view name) {
  for (const AttributeMeta& m : meta) {
    if (m.name == name) return &m;
  }
  return nullptr;
}

std::vector<const AttributeMeta*> WithRole(std::span<const AttributeMeta> meta,
                                           AttributeRole role) {
  std::vector<const AttributeMeta*> out;
  for (const AttributeMeta& m : meta) {
    if (m.role == role) out.push_back(&m);
  }
  return out;
}

// Exploitability rows are listed worst first; on ties, wider combinations
// come first.
bool RanksAbove(const ExploitabilityRow& a, const ExploitabilityRow& b) {
  if (a.exploitability != b.exploitability) {
    return LevelValue(a.exploitability) > LevelValue(b.exploitability);
  }
  if (a.combination.exposure != b.combination.exposure) {
    return LevelValue(a.combination.exposure) >
           LevelValue(b.combination.exposure);
  }
  return a.combination.members.size() > b.combination.members.size();
}

// The combination a flagged record is scored under: the most exposed one, and
// among those the one with the most members.
const QiCombination& RecordCombination(
    const std::vector<QiCombination>& combinations) {
  const QiCombination* best = &combinations.front();
  for (const QiCombination& c : combinations) {
    const int exposure = LevelValue(c.exposure);
    const int best_exposure = LevelValue(best->exposure);
    if (exposure > best_exposure || (exposure == best_exposure &&
                                     c.members.size() > best->members.size())) {
      best = &c;
    }
  }
  return *best;
}

std::string JoinIssues(const std::vector<Issue>& issues) {
  std::string out;
  for (const Issue& issue : issues) {
    if (!out.empty()) out += "; ";
    out += issue.ToString();
  }
  return out;
}

}  // namespace

std::string_view OriginName(CombinationOrigin origin) {
  switch (origin) {
    case CombinationOrigin::kIndividual:
      return "individual";
    case CombinationOrigin::kPerLevelGroup:
      return "per_level_group";
    case CombinationOrigin::kCumulativeGroup:
      return "cumulative_group";
    case CombinationOrigin::kExplicit:
      return "explicit";
  }
  return "";
}

std::string QiCombination::DisplayName() const {
  std::string out;
  for (const std::string& m : members) {
    if (!out.empty()) out += '/';
    out += m;
  }
  return out;
}

ScaleMatrix DefaultExploitabilityMatrix() {
  ScaleMatrix::Grid grid{};
  for (int e = 1; e <= 4; ++e) {
    for (int i = 1; i <= 4; ++i) grid[e - 1][i - 1] = (e + i) / 2;
  }
  return MustCreate("exploitability", grid);
}

ScaleMatrix DefaultRiskMatrix() {
  ScaleMatrix::Grid grid{};
  for (int l = 1; l <= 4; ++l) {
    for (int s = 1; s <= 4; ++s) {
      const int product = l * s;
      grid[l - 1][s - 1] = product <= 2   ? 1
                           : product <= 6 ? 2
                           : product <= 9 ? 3
                                          : 4;
    }
  }
  return MustCreate("risk", grid);
}

RiskMatrices RiskMatrices::Defaults() {
  return {DefaultExploitabilityMatrix(), DefaultRiskMatrix()};
}

ExploitabilityLevel Exploitability(ExposureLevel exposure,
                                   InferenceLevel inference,
                                   const ScaleMatrix& matrix) {
  return static_cast<ExploitabilityLevel>(
      matrix.Lookup(LevelValue(exposure), LevelValue(inference)));
}

RiskLevel Risk(ExploitabilityLevel exploitability, GlobalSeverityLevel severity,
               const ScaleMatrix& matrix) {
  return static_cast<RiskLevel>(
      matrix.Lookup(LevelValue(exploitability), LevelValue(severity)));
}

absl::StatusOr<GlobalSeverityLevel> SeverityOfValue(
    std::span<const AttributeMeta> meta, std::string_view attribute,
    std::string_view value) {
  const AttributeMeta* m = Find(meta, attribute);
  if (m == nullptr) {
    return absl::NotFoundError(
        fmt::format("no metadata for attribute \"{}\"", attribute));
  }
  if (m->role != AttributeRole::kSensitive) {
    return absl::InvalidArgumentError(
        fmt::format("\"{}\" is not a sensitive attribute", attribute));
  }
  if (auto it = m->value_severity.find(std::string(value));
      it != m->value_severity.end()) {
    return GlobalSeverity(it->second);
  }
  if (!m->severity) {
    return absl::FailedPreconditionError(
        fmt::format("\"{}\" has no severity rating", attribute));
  }
  return GlobalSeverity(*m->severity);
}

absl::StatusOr<std::vector<QiCombination>> BuildCombinations(
    std::span<const AttributeMeta> meta, CombinationStrategy strategy,
    std::span<const std::vector<std::string>> explicit_sets) {
  const std::vector<const AttributeMeta*> qis =
      WithRole(meta, AttributeRole::kQuasiIdentifier);
  if (qis.empty()) {
    return absl::FailedPreconditionError("no quasi-identifiers declared");
  }
  for (const AttributeMeta* qi : qis) {
    if (!qi->exposure) {
      return absl::InvalidArgumentError(
          fmt::format("quasi-identifier \"{}\" has no exposure", qi->name));
    }
  }

  std::vector<QiCombination> out;
  std::set<std::vector<std::string>> seen;
  // `members` must already be in declaration order.
  auto add = [&](std::vector<std::string> members, CombinationOrigin origin) {
    if (members.empty() || !seen.insert(members).second) return;
    QiCombination c;
    for (const std::string& name : members) {
      c.exposure = MaxLevel(c.exposure, *Find(meta, name)->exposure);
    }
    c.members = std::move(members);
    c.origin = origin;
    out.push_back(std::move(c));
  };

  for (const AttributeMeta* qi : qis) {
    add({qi->name}, CombinationOrigin::kIndividual);
  }

  switch (strategy) {
    case CombinationStrategy::kPerLevel:
    case CombinationStrategy::kCumulative:
      for (int level = 4; level >= 1; --level) {
        std::vector<std::string> members;
        bool occupied = false;
        for (const AttributeMeta* qi : qis) {
          const int e = LevelValue(*qi->exposure);
          occupied = occupied || e == level;
          const bool include = strategy == CombinationStrategy::kPerLevel
                                   ? e == level
                                   : e >= level;
          if (include) members.push_back(qi->name);
        }
        if (!occupied) continue;
        add(std::move(members), strategy == CombinationStrategy::kPerLevel
                                    ? CombinationOrigin::kPerLevelGroup
                                    : CombinationOrigin::kCumulativeGroup);
      }
      break;
    case CombinationStrategy::kExplicit:
      for (size_t i = 0; i < explicit_sets.size(); ++i) {
        const std::vector<std::string>& set = explicit_sets[i];
        if (set.empty()) {
          return absl::InvalidArgumentError(
              fmt::format("explicit combination {} is empty", i + 1));
        }
        std::set<std::string_view> wanted;
        for (const std::string& name : set) {
          const AttributeMeta* m = Find(meta, name);
          if (m == nullptr) {
            return absl::InvalidArgumentError(
                fmt::format("explicit combination {}: unknown attribute \"{}\"",
                            i + 1, name));
          }
          if (m->role != AttributeRole::kQuasiIdentifier) {
            return absl::InvalidArgumentError(fmt::format(
                "explicit combination {}: \"{}\" is not a quasi-identifier",
                i + 1, name));
          }
          wanted.insert(name);
        }
        std::vector<std::string> members;
        for (const AttributeMeta* qi : qis) {
          if (wanted.contains(qi->name)) members.push_back(qi->name);
        }
        add(std::move(members), CombinationOrigin::kExplicit);
      }
      break;
  }
  return out;
}

ValidationOutcome CheckAssessable(const Dataset& dataset,
                                  std::span<const AttributeMeta> meta,
                                  const AssessmentOptions& options) {
  ValidationOutcome outcome = ValidateMeta(dataset, meta);
  const Issue no_qi{"", "no quasi-identifiers declared"};
  std::erase(outcome.warnings, no_qi);

  if (WithRole(meta, AttributeRole::kSensitive).empty()) {
    outcome.errors.push_back({"", "no sensitive attribute declared"});
  }
  if (WithRole(meta, AttributeRole::kQuasiIdentifier).empty()) {
    outcome.errors.push_back(no_qi);
  }
  if (dataset.row_count() < 2) {
    outcome.errors.push_back(
        {"", fmt::format("dataset has {} row(s); at least 2 are required",
                         dataset.row_count())});
  }
  if (outcome.ok()) {
    absl::StatusOr<std::vector<QiCombination>> combinations = BuildCombinations(
        meta, options.strategy, options.explicit_combinations);
    if (!combinations.ok()) {
      outcome.errors.push_back(
          {"", std::string(combinations.status().message())});
    }
  }
  return outcome;
}

absl::StatusOr<AssessmentReport> Assess(const Dataset& dataset,
                                        std::span<const AttributeMeta> meta,
                                        const AssessmentOptions& options,
                                        const RiskMatrices& matrices) {
  const ValidationOutcome check = CheckAssessable(dataset, meta, options);
  if (!check.ok()) {
    return absl::FailedPreconditionError(JoinIssues(check.errors));
  }

  // Everything below follows dataset column order.
  std::vector<AttributeMeta> ordered;
  for (const std::string& attribute : dataset.attributes()) {
    ordered.push_back(*Find(meta, attribute));
  }

  AssessmentReport report;
  report.dataset_label = dataset.source_label();
  report.row_count = dataset.row_count();
  report.attributes = dataset.attributes();
  report.options = options;
  report.matrices = matrices;
  for (const Issue& warning : check.warnings) {
    report.warnings.push_back(warning.ToString());
  }

  absl::StatusOr<std::vector<QiCombination>> combinations = BuildCombinations(
      ordered, options.strategy, options.explicit_combinations);
  if (!combinations.ok()) return combinations.status();

  std::vector<std::string> all_qis;
  for (size_t column = 0; column < ordered.size(); ++column) {
    const AttributeMeta& m = ordered[column];
    if (m.role == AttributeRole::kIdentifier) {
      report.warnings.push_back(fmt::format(
          "{}: identifier attribute present; it is excluded from every "
          "combination and should be removed before release",
          m.name));
    }
    if (m.role == AttributeRole::kQuasiIdentifier) all_qis.push_back(m.name);
    if (m.role == AttributeRole::kQuasiIdentifier ||
        m.role == AttributeRole::kSensitive) {
      size_t empty = 0;
      for (const Dataset::Row& row : dataset.rows()) {
        if (row[column].empty()) ++empty;
      }
      if (empty > 0) {
        report.warnings.push_back(
            fmt::format("{}: {} empty cell(s) treated as a distinct category",
                        m.name, empty));
      }
    }

    if (m.severity) {
      report.attribute_severity.push_back(
          {m.name, *m.severity, GlobalSeverity(*m.severity)});
    }
    if (m.exposure) report.exposure.push_back({m.name, *m.exposure});
    if (!m.value_severity.empty()) {
      // Values in order of first occurrence, then unused keys.
      std::set<std::string_view> listed;
      for (const Dataset::Row& row : dataset.rows()) {
        const std::string& value = row[column];
        auto it = m.value_severity.find(value);
        if (it == m.value_severity.end() || !listed.insert(value).second) {
          continue;
        }
        report.value_severity.push_back(
            {m.name, value, it->second, GlobalSeverity(it->second), true});
      }
      for (const auto& [value, rating] : m.value_severity) {
        if (listed.contains(value)) continue;
        report.value_severity.push_back(
            {m.name, value, rating, GlobalSeverity(rating), false});
      }
    }
  }

  const QiCombination& record_combination = RecordCombination(*combinations);
  absl::StatusOr<EquivalenceClassing> record_classes =
      EquivalenceClasses(dataset, record_combination.members);
  if (!record_classes.ok()) return record_classes.status();

  std::vector<FlaggedRecord> flagged;
  for (size_t column = 0; column < ordered.size(); ++column) {
    const AttributeMeta& s = ordered[column];
    if (s.role != AttributeRole::kSensitive) continue;

    std::vector<ExploitabilityRow> rows;
    for (const QiCombination& combination : *combinations) {
      absl::StatusOr<DrResult> dr =
          DiscriminationRate(dataset, combination.members, s.name);
      if (!dr.ok()) return dr.status();
      ExploitabilityRow row;
      row.combination = combination;
      row.exploitability = Exploitability(combination.exposure, dr->inference,
                                          matrices.exploitability);
      row.dr = *std::move(dr);
      rows.push_back(std::move(row));
    }
    std::stable_sort(rows.begin(), rows.end(), RanksAbove);
    if (!rows.empty() && rows.front().dr.degenerate()) {
      report.warnings.push_back(
          fmt::format("{}: sensitive attribute is constant (H(S) = 0); every "
                      "discrimination rate is pinned to 1",
                      s.name));
    }

    // Severity of the worst value present, and per-row flags on the way.
    GlobalSeverityLevel severity = GlobalSeverityLevel::kNegligible;
    std::vector<GlobalSeverityLevel> row_severity;
    for (const Dataset::Row& row : dataset.rows()) {
      absl::StatusOr<GlobalSeverityLevel> v =
          SeverityOfValue(ordered, s.name, row[column]);
      if (!v.ok()) return v.status();
      severity = MaxLevel(severity, *v);
      row_severity.push_back(*v);
    }

    for (const ExploitabilityRow& row : rows) {
      RiskRow risk;
      risk.description = fmt::format("Re-identification risk of {} via {} ({})",
                                     s.name, row.combination.DisplayName(),
                                     FormatLevel(row.combination.exposure));
      risk.sensitive = s.name;
      risk.combination = row.combination;
      risk.exploitability = row.exploitability;
      risk.severity = severity;
      risk.risk = Risk(row.exploitability, severity, matrices.risk);
      report.overall_risk = MaxLevel(report.overall_risk, risk.risk);
      report.risk_rows.push_back(std::move(risk));
    }

    SensitiveMetrics metrics;
    metrics.sensitive = s.name;
    metrics.qi_set = all_qis;
    absl::StatusOr<int64_t> k = KAnonymity(dataset, all_qis);
    if (!k.ok()) return k.status();
    absl::StatusOr<int64_t> l = DistinctLDiversity(dataset, all_qis, s.name);
    if (!l.ok()) return l.status();
    metrics.k_anonymity = *k;
    metrics.l_diversity = *l;
    for (const ExploitabilityRow& row : rows)
      metrics.dr_values.push_back(row.dr);
    report.metrics.push_back(std::move(metrics));

    std::vector<double> class_score(record_classes->classes.size(), -1.0);
    for (size_t r = 0; r < dataset.row_count(); ++r) {
      if (LevelValue(row_severity[r]) < LevelValue(options.flag_threshold)) {
        continue;
      }
      const size_t cls = record_classes->row_class[r];
      if (class_score[cls] < 0.0) {
        absl::StatusOr<double> score =
            ClassInference(dataset, record_classes->classes[cls], s.name);
        if (!score.ok()) return score.status();
        class_score[cls] = *score;
      }
      absl::StatusOr<InferenceLevel> band = Band(class_score[cls]);
      if (!band.ok()) return band.status();
      FlaggedRecord record;
      record.row_index = r;
      record.sensitive = s.name;
      record.sensitive_value = dataset.cell(r, column);
      record.value_severity = row_severity[r];
      record.combination = record_combination.members;
      record.class_inference = class_score[cls];
      record.record_risk = Risk(Exploitability(record_combination.exposure,
                                               *band, matrices.exploitability),
                                row_severity[r], matrices.risk);
      flagged.push_back(std::move(record));
    }

    for (ExploitabilityRow& row : rows) {
      report.exploitability_rows.push_back(std::move(row));
    }
  }

  std::stable_sort(flagged.begin(), flagged.end(),
                   [](const FlaggedRecord& a, const FlaggedRecord& b) {
                     return a.row_index < b.row_index;
                   });
  report.flagged_records = std::move(flagged);

  if (std::optional<std::string> note = fixtures::ReferenceNote(dataset)) {
    report.warnings.push_back(*std::move(note));
  }
  return report;
}

}  // namespace reident
