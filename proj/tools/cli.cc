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

#include "cli.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string_view>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "fmt/format.h"
#include "nlohmann/json.hpp"
#include "reident/engine.h"
#include "reident/fixtures.h"
#include "reident/ingest.h"
#include "reident/metrics.h"
#include "reident/report.h"

namespace reident::cli {
namespace {

class Diagnostics {
 public:
  Diagnostics(std::ostream& err, bool styled) : err_(err), styled_(styled) {}

  void Error(std::string_view message) {
    err_ << (styled_ ? "\x1b[31merror:\x1b[0m " : "error: ") << message << '\n';
  }

  void Error(const absl::Status& status) {
    Error(std::string(status.message()));
  }

 private:
  std::ostream& err_;
  bool styled_;
};

struct AssessArgs {
  std::string data;
  std::string meta;
  std::string out;
  std::string format = "json";
};

struct MetricArgs {
  std::string kind;
  std::string data;
  std::vector<std::string> qi;
  std::string sensitive;
};

struct FixtureArgs {
  std::string name;
  std::string dir = ".";
};

bool WriteText(const std::filesystem::path& path, const std::string& text,
               Diagnostics& diag) {
  std::ofstream file(path, std::ios::binary);
  file << text;
  file.close();
  if (!file) {
    diag.Error(fmt::format("{}: cannot write", path.string()));
    return false;
  }
  return true;
}

int CmdAssess(const AssessArgs& args, std::ostream& out, Diagnostics& diag) {
  if (args.format == "both" && args.out.empty()) {
    diag.Error("--format both requires --out");
    return kExitInvalid;
  }
  absl::StatusOr<Dataset> dataset = LoadCsvFile(args.data);
  if (!dataset.ok()) {
    diag.Error(dataset.status());
    return kExitFailure;
  }
  absl::StatusOr<MetadataDocument> doc = LoadMetadataFile(args.meta);
  if (!doc.ok()) {
    diag.Error(doc.status());
    return kExitFailure;
  }

  const ValidationOutcome check =
      CheckAssessable(*dataset, doc->attributes, doc->options);
  if (!check.ok()) {
    for (const Issue& issue : check.errors) diag.Error(issue.ToString());
    return kExitInvalid;
  }

  RiskMatrices matrices = RiskMatrices::Defaults();
  if (doc->exploitability_matrix) {
    matrices.exploitability = *doc->exploitability_matrix;
  }
  if (doc->risk_matrix) matrices.risk = *doc->risk_matrix;

  absl::StatusOr<AssessmentReport> report =
      Assess(*dataset, doc->attributes, doc->options, matrices);
  if (!report.ok()) {
    diag.Error(report.status());
    return kExitInvalid;
  }

  if (args.out.empty()) {
    out << (args.format == "json" ? ToJson(*report) : ToMarkdown(*report));
    return kExitOk;
  }
  bool written = true;
  if (args.format == "both") {
    written = WriteText(args.out + ".json", ToJson(*report), diag) &&
              WriteText(args.out + ".md", ToMarkdown(*report), diag);
  } else {
    written = WriteText(
        args.out, args.format == "json" ? ToJson(*report) : ToMarkdown(*report),
        diag);
  }
  return written ? kExitOk : kExitFailure;
}

int CmdMetric(const MetricArgs& args, std::ostream& out, Diagnostics& diag) {
  absl::StatusOr<Dataset> dataset = LoadCsvFile(args.data);
  if (!dataset.ok()) {
    diag.Error(dataset.status());
    return kExitFailure;
  }
  if (args.kind != "k" && args.sensitive.empty()) {
    diag.Error(fmt::format("metric {} requires --sensitive", args.kind));
    return kExitInvalid;
  }

  nlohmann::json result;
  absl::Status status;
  if (args.kind == "k") {
    absl::StatusOr<int64_t> k = KAnonymity(*dataset, args.qi);
    status = k.status();
    if (k.ok()) result = {{"k", *k}};
  } else if (args.kind == "ldiv") {
    absl::StatusOr<int64_t> l =
        DistinctLDiversity(*dataset, args.qi, args.sensitive);
    status = l.status();
    if (l.ok()) result = {{"l", *l}};
  } else {
    absl::StatusOr<DrResult> dr =
        DiscriminationRate(*dataset, args.qi, args.sensitive);
    status = dr.status();
    if (dr.ok()) {
      result = {{"qi_set", dr->qi_set},
                {"sensitive", dr->sensitive},
                {"h_s", FormatReal(dr->h_s)},
                {"h_s_given_qi", FormatReal(dr->h_s_given_qi)},
                {"dr", FormatReal(dr->dr)},
                {"inference", LevelValue(dr->inference)},
                {"inference_label", LevelLabel(dr->inference)}};
    }
  }
  if (!status.ok()) {
    diag.Error(status);
    return kExitInvalid;
  }
  out << result.dump() << '\n';
  return kExitOk;
}

int CmdFixtures(const FixtureArgs& args, Diagnostics& diag) {
  absl::StatusOr<Dataset> table = fixtures::Table(args.name);
  absl::StatusOr<std::string> meta = fixtures::MetadataJson(args.name);
  if (!table.ok() || !meta.ok()) {
    diag.Error(table.ok() ? meta.status() : table.status());
    return kExitInvalid;
  }
  const std::filesystem::path dir(args.dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    diag.Error(fmt::format("{}: {}", dir.string(), ec.message()));
    return kExitFailure;
  }
  std::ostringstream csv;
  WriteCsv(*table, csv);
  const bool written = WriteText(dir / (args.name + ".csv"), csv.str(), diag) &&
                       WriteText(dir / (args.name + ".meta.json"), *meta, diag);
  return written ? kExitOk : kExitFailure;
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err, bool styled) {
  Diagnostics diag(err, styled);

  CLI::App app{"Re-identification risk assessment for anonymized tables",
               "reident_risk"};
  app.require_subcommand(1);

  AssessArgs assess;
  CLI::App* assess_cmd =
      app.add_subcommand("assess", "Assess a dataset against its metadata");
  assess_cmd->add_option("--data", assess.data, "Dataset CSV")->required();
  assess_cmd->add_option("--meta", assess.meta, "Metadata JSON")->required();
  assess_cmd->add_option("--out", assess.out,
                         "Output path (stdout when omitted); with --format "
                         "both, the .json and .md suffixes are appended");
  assess_cmd->add_option("--format", assess.format, "json, markdown or both")
      ->check(CLI::IsMember({"json", "markdown", "both"}));

  MetricArgs metric;
  CLI::App* metric_cmd =
      app.add_subcommand("metric", "Compute one metric over a dataset");
  metric_cmd->add_option("kind", metric.kind, "dr, k or ldiv")
      ->required()
      ->check(CLI::IsMember({"dr", "k", "ldiv"}));
  metric_cmd->add_option("--data", metric.data, "Dataset CSV")->required();
  metric_cmd->add_option("--qi", metric.qi, "Comma separated quasi-identifiers")
      ->required()
      ->delimiter(',');
  metric_cmd->add_option("--sensitive", metric.sensitive,
                         "Sensitive attribute (dr and ldiv)");

  FixtureArgs fixture;
  CLI::App* fixtures_cmd =
      app.add_subcommand("fixtures", "Bundled example tables");
  fixtures_cmd->require_subcommand(1);
  CLI::App* emit_cmd = fixtures_cmd->add_subcommand(
      "emit", "Write <name>.csv and <name>.meta.json");
  emit_cmd->add_option("name", fixture.name, "initial, kanon or hipaa")
      ->required();
  emit_cmd->add_option("--dir", fixture.dir, "Output directory");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    diag.Error(e.what());
    return kExitInvalid;
  }

  if (assess_cmd->parsed()) return CmdAssess(assess, out, diag);
  if (metric_cmd->parsed()) return CmdMetric(metric, out, diag);
  return CmdFixtures(fixture, diag);
}

}  // namespace reident::cli
