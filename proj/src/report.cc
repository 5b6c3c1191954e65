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

#include "reident/report.h"

#include <iterator>
#include <string_view>

#include "fmt/format.h"
#include "fmt/ranges.h"
#include "nlohmann/json.hpp"

namespace reident {
namespace {

using Json = nlohmann::json;

template <FourLevelScale Level>
Json LevelJson(Level level) {
  return Json{{"level", LevelValue(level)}, {"label", LevelLabel(level)}};
}

Json RatingJson(const SeverityRating& rating) {
  return Json{{"bodily", LevelJson(rating.bodily)},
              {"material", LevelJson(rating.material)},
              {"moral", LevelJson(rating.moral)},
              {"global", LevelJson(GlobalSeverity(rating))}};
}

Json MatrixJson(const ScaleMatrix& matrix) {
  Json rows = Json::array();
  for (const auto& row : matrix.cells()) {
    rows.push_back(Json(std::vector<int>(row.begin(), row.end())));
  }
  return rows;
}

Json CombinationJson(const QiCombination& c) {
  return Json{{"members", c.members},
              {"name", c.DisplayName()},
              {"origin", OriginName(c.origin)},
              {"exposure", LevelJson(c.exposure)}};
}

Json DrJson(const DrResult& dr) {
  return Json{{"qi_set", dr.qi_set},
              {"sensitive", dr.sensitive},
              {"h_s", FormatReal(dr.h_s)},
              {"h_s_given_qi", FormatReal(dr.h_s_given_qi)},
              {"dr", FormatReal(dr.dr)},
              {"inference", LevelJson(dr.inference)}};
}

// Markdown table cells may not contain raw pipes or newlines.
std::string Cell(std::string_view text) {
  std::string out;
  for (char c : text) {
    if (c == '|') {
      out += "\\|";
    } else if (c == '\n' || c == '\r') {
      out.push_back(' ');
    } else {
      out.push_back(c);
    }
  }
  return out;
}

std::string TableRow(const std::vector<std::string>& cells) {
  return fmt::format("| {} |\n", fmt::join(cells, " | "));
}

std::string TableHeader(const std::vector<std::string>& titles) {
  return TableRow(titles) +
         TableRow(std::vector<std::string>(titles.size(), "---"));
}

std::string Bold(std::string_view text) {
  return text.empty() ? std::string() : fmt::format("**{}**", text);
}

std::string Joined(const std::vector<std::string>& names) {
  return Cell(fmt::format("{}", fmt::join(names, "/")));
}

}  // namespace

std::string FormatReal(double value) {
  std::string out = fmt::format("{:.6f}", value);
  if (out == "-0.000000") out = "0.000000";
  return out;
}

std::string ToJson(const AssessmentReport& report) {
  Json doc;
  doc["format_version"] = 1;
  doc["dataset"] = Json{{"label", report.dataset_label},
                        {"row_count", report.row_count},
                        {"attributes", report.attributes}};
  doc["settings"] =
      Json{{"flag_threshold", LevelJson(report.options.flag_threshold)},
           {"combination_strategy", StrategyName(report.options.strategy)},
           {"explicit_combinations", report.options.explicit_combinations},
           {"matrices",
            Json{{"exploitability", MatrixJson(report.matrices.exploitability)},
                 {"risk", MatrixJson(report.matrices.risk)}}}};

  Json attribute_severity = Json::array();
  for (const AttributeSeverityEntry& e : report.attribute_severity) {
    Json row = RatingJson(e.rating);
    row["attribute"] = e.attribute;
    attribute_severity.push_back(std::move(row));
  }
  doc["attribute_severity"] = std::move(attribute_severity);

  Json value_severity = Json::array();
  for (const ValueSeverityEntry& e : report.value_severity) {
    Json row = RatingJson(e.rating);
    row["attribute"] = e.attribute;
    row["value"] = e.value;
    row["present"] = e.present;
    value_severity.push_back(std::move(row));
  }
  doc["value_severity"] = std::move(value_severity);

  Json exposure = Json::array();
  for (const ExposureEntry& e : report.exposure) {
    exposure.push_back(
        Json{{"attribute", e.attribute}, {"exposure", LevelJson(e.exposure)}});
  }
  doc["exposure"] = std::move(exposure);

  Json exploitability = Json::array();
  for (const ExploitabilityRow& row : report.exploitability_rows) {
    exploitability.push_back(
        Json{{"sensitive", row.dr.sensitive},
             {"combination", CombinationJson(row.combination)},
             {"exposure", LevelJson(row.combination.exposure)},
             {"dr", FormatReal(row.dr.dr)},
             {"inference", LevelJson(row.inference())},
             {"exploitability", LevelJson(row.exploitability)}});
  }
  doc["exploitability"] = std::move(exploitability);

  Json risk = Json::array();
  for (const RiskRow& row : report.risk_rows) {
    risk.push_back(Json{{"description", row.description},
                        {"sensitive", row.sensitive},
                        {"combination", CombinationJson(row.combination)},
                        {"exploitability", LevelJson(row.exploitability)},
                        {"severity", LevelJson(row.severity)},
                        {"risk", LevelJson(row.risk)}});
  }
  doc["risk"] = std::move(risk);
  doc["overall_risk"] = LevelJson(report.overall_risk);

  Json flagged = Json::array();
  for (const FlaggedRecord& f : report.flagged_records) {
    flagged.push_back(Json{{"row", f.row_index + 1},
                           {"sensitive", f.sensitive},
                           {"value", f.sensitive_value},
                           {"value_severity", LevelJson(f.value_severity)},
                           {"combination", f.combination},
                           {"class_inference", FormatReal(f.class_inference)},
                           {"record_risk", LevelJson(f.record_risk)}});
  }
  doc["flagged_records"] = std::move(flagged);

  Json metrics = Json::array();
  for (const SensitiveMetrics& m : report.metrics) {
    Json drs = Json::array();
    for (const DrResult& dr : m.dr_values) drs.push_back(DrJson(dr));
    metrics.push_back(Json{{"sensitive", m.sensitive},
                           {"qi_set", m.qi_set},
                           {"k_anonymity", m.k_anonymity},
                           {"l_diversity", m.l_diversity},
                           {"dr_values", std::move(drs)}});
  }
  doc["metrics"] = std::move(metrics);
  doc["warnings"] = report.warnings;

  return doc.dump(2, ' ', false, Json::error_handler_t::replace) + "\n";
}

std::string ToMarkdown(const AssessmentReport& report) {
  std::string out = "# Re-identification risk assessment\n\n";
  auto emit = std::back_inserter(out);

  out += "## Summary\n\n";
  fmt::format_to(emit, "- Dataset: {}\n",
                 report.dataset_label.empty() ? "(unlabelled)"
                                              : Cell(report.dataset_label));
  fmt::format_to(emit, "- Records: {}\n", report.row_count);
  fmt::format_to(emit, "- Combination strategy: {}\n",
                 StrategyName(report.options.strategy));
  fmt::format_to(emit, "- Flag threshold: {}\n",
                 FormatLevel(report.options.flag_threshold));
  fmt::format_to(emit, "- Overall risk: **{}**\n\n",
                 FormatLevel(report.overall_risk));

  out += "## Severity\n\n";
  if (report.attribute_severity.empty()) {
    out += "none\n\n";
  } else {
    out += TableHeader({"Attribute", "Bodily Impact", "Material Impact",
                        "Moral Impact", "Global Severity"});
    for (const AttributeSeverityEntry& e : report.attribute_severity) {
      out += TableRow({Cell(e.attribute), FormatLevel(e.rating.bodily),
                       FormatLevel(e.rating.material),
                       FormatLevel(e.rating.moral), FormatLevel(e.global)});
    }
    out += "\n";
  }
  if (!report.value_severity.empty()) {
    out += "### Value severity\n\n";
    out += TableHeader({"Attribute", "Value", "Severity", "Present"});
    for (const ValueSeverityEntry& e : report.value_severity) {
      out += TableRow({Cell(e.attribute), Cell(e.value), FormatLevel(e.global),
                       e.present ? "yes" : "no"});
    }
    out += "\n";
  }

  out += "## Exposure\n\n";
  out += TableHeader({"Attribute", "Exposure"});
  for (const ExposureEntry& e : report.exposure) {
    out += TableRow({Cell(e.attribute), FormatLevel(e.exposure)});
  }
  out += "\n";

  out += "## Exploitability\n\n";
  std::string current;
  for (const ExploitabilityRow& row : report.exploitability_rows) {
    if (row.dr.sensitive != current) {
      if (!current.empty()) out += "\n";
      current = row.dr.sensitive;
      fmt::format_to(emit, "### {}\n\n", Cell(current));
      out += TableHeader({"Combined Attributes", "Exposure", "Inference",
                          "Exploitability", "DR"});
    }
    out += TableRow({Cell(row.combination.DisplayName()),
                     FormatLevel(row.combination.exposure),
                     FormatLevel(row.inference()),
                     FormatLevel(row.exploitability), FormatReal(row.dr.dr)});
  }
  out += "\n";

  out += "## Risk\n\n";
  out +=
      TableHeader({"Description", "Exploitability", "Severity", "Risk Level"});
  for (const RiskRow& row : report.risk_rows) {
    out += TableRow({Cell(row.description), FormatLevel(row.exploitability),
                     FormatLevel(row.severity), FormatLevel(row.risk)});
  }
  out += "\n";

  out += "## Flagged Records\n\n";
  if (report.flagged_records.empty()) {
    out += "none\n\n";
  } else {
    out += TableHeader({"Row", "Attribute", "Value", "Severity",
                        "Class Inference", "Record Risk"});
    for (const FlaggedRecord& f : report.flagged_records) {
      out += TableRow({Bold(std::to_string(f.row_index + 1)),
                       Bold(Cell(f.sensitive)), Bold(Cell(f.sensitive_value)),
                       Bold(FormatLevel(f.value_severity)),
                       Bold(FormatReal(f.class_inference)),
                       Bold(FormatLevel(f.record_risk))});
    }
    fmt::format_to(emit, "\nClass inference is scored on {}.\n\n",
                   Joined(report.flagged_records.front().combination));
  }

  out += "## Metrics Appendix\n\n";
  for (const SensitiveMetrics& m : report.metrics) {
    fmt::format_to(emit, "### {}\n\n", Cell(m.sensitive));
    fmt::format_to(emit, "- Quasi-identifiers: {}\n", Joined(m.qi_set));
    fmt::format_to(emit, "- k-anonymity: {}\n", m.k_anonymity);
    fmt::format_to(emit, "- Distinct l-diversity: {}\n\n", m.l_diversity);
    out += TableHeader(
        {"Quasi-identifiers", "H(S)", Cell("H(S|QI)"), "DR", "Inference"});
    for (const DrResult& dr : m.dr_values) {
      out += TableRow({Joined(dr.qi_set), FormatReal(dr.h_s),
                       FormatReal(dr.h_s_given_qi), FormatReal(dr.dr),
                       FormatLevel(dr.inference)});
    }
    out += "\n";
  }

  out += "## Warnings\n\n";
  if (report.warnings.empty()) {
    out += "none\n";
  } else {
    for (const std::string& w : report.warnings) {
      fmt::format_to(emit, "- {}\n", w);
    }
  }
  return out;
}

}  // namespace reident
