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

#include "reident/ingest.h"

#include <fstream>
#include <initializer_list>
#include <iostream>
#include <iterator>
#include <set>
#include <sstream>
#include <utility>

#include "absl/status/status.h"
#include "fmt/format.h"

namespace reident {
namespace {

using nlohmann::json;

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

bool IsBlank(char c) { return c == ' ' || c == '\t'; }

struct CsvRecord {
  std::vector<std::string> cells;
  // A line with nothing on it but whitespace.
  bool blank = false;
};

class CsvReader {
 public:
  explicit CsvReader(std::string_view text) : text_(text) {
    if (text_.starts_with("\xEF\xBB\xBF")) text_.remove_prefix(3);
  }

  bool done() const { return pos_ >= text_.size(); }

  absl::StatusOr<CsvRecord> Next() {
    ++record_;
    CsvRecord record;
    bool quoted_any = false;
    while (true) {
      bool quoted = false;
      absl::StatusOr<std::string> cell = ReadCell(quoted);
      if (!cell.ok()) return cell.status();
      quoted_any = quoted_any || quoted;
      record.cells.push_back(*std::move(cell));
      if (pos_ < text_.size() && text_[pos_] == ',') {
        ++pos_;
        continue;
      }
      break;
    }
    EndOfLine();
    record.blank =
        !quoted_any && record.cells.size() == 1 && record.cells[0].empty();
    return record;
  }

 private:
  absl::Status Error(std::string_view what) const {
    return absl::InvalidArgumentError(
        fmt::format("record {}: {}", record_, what));
  }

  void SkipBlanks() {
    while (pos_ < text_.size() && IsBlank(text_[pos_])) ++pos_;
  }

  bool AtCellEnd() const {
    return pos_ >= text_.size() || text_[pos_] == ',' || text_[pos_] == '\n' ||
           text_[pos_] == '\r';
  }

  void EndOfLine() {
    if (pos_ < text_.size() && text_[pos_] == '\r') ++pos_;
    if (pos_ < text_.size() && text_[pos_] == '\n') ++pos_;
  }

  absl::StatusOr<std::string> ReadCell(bool& quoted) {
    SkipBlanks();
    std::string cell;
    if (pos_ < text_.size() && text_[pos_] == '"') {
      quoted = true;
      ++pos_;
      while (true) {
        if (pos_ >= text_.size()) return Error("unterminated quoted cell");
        const char c = text_[pos_++];
        if (c != '"') {
          cell.push_back(c);
        } else if (pos_ < text_.size() && text_[pos_] == '"') {
          cell.push_back('"');
          ++pos_;
        } else {
          break;
        }
      }
      SkipBlanks();
      if (!AtCellEnd())
        return Error("unexpected character after closing quote");
      return cell;
    }
    while (!AtCellEnd()) {
      const char c = text_[pos_++];
      if (c == '"') return Error("stray quote inside unquoted cell");
      cell.push_back(c);
    }
    while (!cell.empty() && IsBlank(cell.back())) cell.pop_back();
    return cell;
  }

  std::string_view text_;
  size_t pos_ = 0;
  size_t record_ = 0;
};

bool NeedsQuotes(const std::string& cell) {
  if (cell.empty()) return true;
  if (IsBlank(cell.front()) || IsBlank(cell.back())) return true;
  return cell.find_first_of(",\"\r\n") != std::string::npos;
}

std::string Message(const absl::Status& status) {
  return std::string(status.message());
}

absl::Status Prefixed(const absl::Status& status, std::string_view prefix) {
  return absl::Status(status.code(),
                      fmt::format("{}: {}", prefix, Message(status)));
}

absl::StatusOr<std::string> ReadFile(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::exists(path, ec)) {
    return absl::NotFoundError(fmt::format("{}: no such file", path.string()));
  }
  if (std::filesystem::is_directory(path, ec)) {
    return absl::UnavailableError(
        fmt::format("{}: is a directory", path.string()));
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    return absl::UnavailableError(
        fmt::format("{}: cannot open for reading", path.string()));
  }
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  if (in.bad()) {
    return absl::UnavailableError(
        fmt::format("{}: read failed", path.string()));
  }
  return text;
}

// ---------------------------------------------------------------------------
// Metadata
// ---------------------------------------------------------------------------

absl::Status PathError(const std::string& path, std::string_view what) {
  return absl::InvalidArgumentError(
      fmt::format("{}: {}", path.empty() ? "/" : path, what));
}

// JSON pointer reference token.
std::string Token(std::string_view key) {
  std::string out;
  for (char c : key) {
    if (c == '~') {
      out += "~0";
    } else if (c == '/') {
      out += "~1";
    } else {
      out.push_back(c);
    }
  }
  return out;
}

std::string Child(const std::string& path, std::string_view key) {
  return fmt::format("{}/{}", path, Token(key));
}

std::string Child(const std::string& path, size_t index) {
  return fmt::format("{}/{}", path, index);
}

absl::Status CheckObject(const json& j, const std::string& path) {
  if (!j.is_object()) return PathError(path, "expected an object");
  return absl::OkStatus();
}

absl::Status CheckKeys(const json& j, const std::string& path,
                       std::initializer_list<std::string_view> allowed) {
  if (absl::Status s = CheckObject(j, path); !s.ok()) return s;
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (std::string_view a : allowed) known = known || key == a;
    if (!known) return PathError(Child(path, key), "unknown field");
  }
  return absl::OkStatus();
}

bool Present(const json& j, std::string_view key) {
  auto it = j.find(key);
  return it != j.end() && !it->is_null();
}

template <FourLevelScale Level>
absl::StatusOr<Level> ParseLevel(const json& j, const std::string& path) {
  absl::StatusOr<Level> level;
  if (j.is_number_integer()) {
    const int64_t v = j.get<int64_t>();
    if (v < 1 || v > 4) {
      return PathError(path, fmt::format("level {} out of range 1..4", v));
    }
    return static_cast<Level>(v);
  }
  if (!j.is_string()) {
    return PathError(path, "expected an integer level 1..4 or a label");
  }
  const std::string label = j.get<std::string>();
  if constexpr (std::is_same_v<Level, ExposureLevel>) {
    level = ParseExposureLabel(label);
  } else {
    level = LevelFromLabel<Level>(label);
  }
  if (!level.ok()) return PathError(path, Message(level.status()));
  return level;
}

absl::StatusOr<SeverityRating> ParseRating(const json& j,
                                           const std::string& path) {
  if (absl::Status s = CheckKeys(j, path, {"bodily", "material", "moral"});
      !s.ok()) {
    return s;
  }
  SeverityRating rating;
  const std::pair<std::string_view, SeverityLevel*> parts[] = {
      {"bodily", &rating.bodily},
      {"material", &rating.material},
      {"moral", &rating.moral},
  };
  for (const auto& [key, target] : parts) {
    if (!Present(j, key)) return PathError(Child(path, key), "missing");
    absl::StatusOr<SeverityLevel> level =
        ParseLevel<SeverityLevel>(j.at(std::string(key)), Child(path, key));
    if (!level.ok()) return level.status();
    *target = *level;
  }
  return rating;
}

absl::StatusOr<AttributeMeta> ParseAttribute(const json& j,
                                             const std::string& path) {
  if (absl::Status s = CheckKeys(
          j, path, {"name", "role", "exposure", "severity", "value_severity"});
      !s.ok()) {
    return s;
  }
  AttributeMeta meta;
  if (!Present(j, "name")) return PathError(Child(path, "name"), "missing");
  if (!j.at("name").is_string() || j.at("name").get<std::string>().empty()) {
    return PathError(Child(path, "name"), "expected a non-empty string");
  }
  meta.name = j.at("name").get<std::string>();

  if (!Present(j, "role")) return PathError(Child(path, "role"), "missing");
  if (!j.at("role").is_string()) {
    return PathError(Child(path, "role"), "expected a string");
  }
  absl::StatusOr<AttributeRole> role =
      ParseRole(j.at("role").get<std::string>());
  if (!role.ok()) return PathError(Child(path, "role"), Message(role.status()));
  meta.role = *role;

  if (Present(j, "exposure")) {
    absl::StatusOr<ExposureLevel> exposure =
        ParseLevel<ExposureLevel>(j.at("exposure"), Child(path, "exposure"));
    if (!exposure.ok()) return exposure.status();
    meta.exposure = *exposure;
  }
  if (Present(j, "severity")) {
    absl::StatusOr<SeverityRating> rating =
        ParseRating(j.at("severity"), Child(path, "severity"));
    if (!rating.ok()) return rating.status();
    meta.severity = *rating;
  }
  if (Present(j, "value_severity")) {
    const json& values = j.at("value_severity");
    const std::string values_path = Child(path, "value_severity");
    if (absl::Status s = CheckObject(values, values_path); !s.ok()) return s;
    for (const auto& [value, rating_json] : values.items()) {
      absl::StatusOr<SeverityRating> rating =
          ParseRating(rating_json, Child(values_path, value));
      if (!rating.ok()) return rating.status();
      meta.value_severity.emplace(value, *rating);
    }
  }
  return meta;
}

absl::StatusOr<ScaleMatrix> ParseMatrix(const json& j, const std::string& path,
                                        std::string name) {
  constexpr std::string_view kShape = "expected a 4x4 array of integer levels";
  if (!j.is_array() || j.size() != 4) return PathError(path, kShape);
  ScaleMatrix::Grid grid{};
  for (size_t r = 0; r < 4; ++r) {
    const json& row = j.at(r);
    if (!row.is_array() || row.size() != 4) {
      return PathError(Child(path, r), kShape);
    }
    for (size_t c = 0; c < 4; ++c) {
      const std::string cell_path = Child(Child(path, r), c);
      if (!row.at(c).is_number_integer()) {
        return PathError(cell_path, "expected an integer level");
      }
      const int64_t v = row.at(c).get<int64_t>();
      if (v < 1 || v > 4) {
        return PathError(cell_path,
                         fmt::format("level {} out of range 1..4", v));
      }
      grid[r][c] = static_cast<int>(v);
    }
  }
  absl::StatusOr<ScaleMatrix> matrix =
      ScaleMatrix::Create(std::move(name), grid);
  if (!matrix.ok()) return PathError(path, Message(matrix.status()));
  return matrix;
}

absl::StatusOr<AssessmentOptions> ParseOptions(const json& j,
                                               const std::string& path) {
  if (absl::Status s = CheckKeys(
          j, path,
          {"flag_threshold", "combination_strategy", "explicit_combinations"});
      !s.ok()) {
    return s;
  }
  AssessmentOptions options;
  if (Present(j, "flag_threshold")) {
    absl::StatusOr<SeverityLevel> threshold = ParseLevel<SeverityLevel>(
        j.at("flag_threshold"), Child(path, "flag_threshold"));
    if (!threshold.ok()) return threshold.status();
    options.flag_threshold = *threshold;
  }

  const std::string sets_path = Child(path, "explicit_combinations");
  if (Present(j, "explicit_combinations")) {
    const json& sets = j.at("explicit_combinations");
    if (!sets.is_array()) {
      return PathError(sets_path, "expected an array of attribute-name arrays");
    }
    for (size_t i = 0; i < sets.size(); ++i) {
      const json& set = sets.at(i);
      if (!set.is_array()) {
        return PathError(Child(sets_path, i), "expected an array of names");
      }
      std::vector<std::string> members;
      for (size_t m = 0; m < set.size(); ++m) {
        if (!set.at(m).is_string()) {
          return PathError(Child(Child(sets_path, i), m), "expected a string");
        }
        members.push_back(set.at(m).get<std::string>());
      }
      options.explicit_combinations.push_back(std::move(members));
    }
  }

  if (Present(j, "combination_strategy")) {
    const std::string strategy_path = Child(path, "combination_strategy");
    if (!j.at("combination_strategy").is_string()) {
      return PathError(strategy_path, "expected a string");
    }
    absl::StatusOr<CombinationStrategy> strategy =
        ParseStrategy(j.at("combination_strategy").get<std::string>());
    if (!strategy.ok()) {
      return PathError(strategy_path, Message(strategy.status()));
    }
    options.strategy = *strategy;
    if (options.strategy != CombinationStrategy::kExplicit &&
        !options.explicit_combinations.empty()) {
      return PathError(
          sets_path, fmt::format("not allowed with combination_strategy \"{}\"",
                                 StrategyName(options.strategy)));
    }
  } else if (!options.explicit_combinations.empty()) {
    options.strategy = CombinationStrategy::kExplicit;
  }
  if (options.strategy == CombinationStrategy::kExplicit &&
      options.explicit_combinations.empty()) {
    return PathError(sets_path,
                     "required when combination_strategy is \"explicit\"");
  }
  return options;
}

absl::StatusOr<MetadataDocument> ParseDocument(const json& j) {
  if (absl::Status s =
          CheckKeys(j, "", {"version", "attributes", "matrices", "options"});
      !s.ok()) {
    return s;
  }
  MetadataDocument doc;
  if (!Present(j, "version")) return PathError("/version", "missing");
  if (!j.at("version").is_number_integer() ||
      j.at("version").get<int64_t>() != kMetadataVersion) {
    return PathError("/version",
                     fmt::format("unsupported version {} (expected {})",
                                 j.at("version").dump(), kMetadataVersion));
  }
  doc.version = kMetadataVersion;

  if (!Present(j, "attributes")) return PathError("/attributes", "missing");
  const json& attributes = j.at("attributes");
  if (!attributes.is_array()) {
    return PathError("/attributes", "expected an array");
  }
  for (size_t i = 0; i < attributes.size(); ++i) {
    absl::StatusOr<AttributeMeta> meta =
        ParseAttribute(attributes.at(i), Child("/attributes", i));
    if (!meta.ok()) return meta.status();
    doc.attributes.push_back(*std::move(meta));
  }

  if (Present(j, "matrices")) {
    const json& matrices = j.at("matrices");
    if (absl::Status s =
            CheckKeys(matrices, "/matrices", {"exploitability", "risk"});
        !s.ok()) {
      return s;
    }
    if (Present(matrices, "exploitability")) {
      absl::StatusOr<ScaleMatrix> m =
          ParseMatrix(matrices.at("exploitability"), "/matrices/exploitability",
                      "exploitability");
      if (!m.ok()) return m.status();
      doc.exploitability_matrix = *m;
    }
    if (Present(matrices, "risk")) {
      absl::StatusOr<ScaleMatrix> m =
          ParseMatrix(matrices.at("risk"), "/matrices/risk", "risk");
      if (!m.ok()) return m.status();
      doc.risk_matrix = *m;
    }
  }

  if (Present(j, "options")) {
    absl::StatusOr<AssessmentOptions> options =
        ParseOptions(j.at("options"), "/options");
    if (!options.ok()) return options.status();
    doc.options = *std::move(options);
  }
  return doc;
}

json LevelsJson(const SeverityRating& rating) {
  return {{"bodily", LevelValue(rating.bodily)},
          {"material", LevelValue(rating.material)},
          {"moral", LevelValue(rating.moral)}};
}

json GridJson(const ScaleMatrix& matrix) {
  json rows = json::array();
  for (const auto& row : matrix.cells()) rows.push_back(row);
  return rows;
}

}  // namespace

absl::StatusOr<Dataset> ParseCsv(std::string_view text,
                                 std::string source_label) {
  CsvReader reader(text);
  std::vector<CsvRecord> records;
  while (!reader.done()) {
    absl::StatusOr<CsvRecord> record = reader.Next();
    if (!record.ok()) return record.status();
    records.push_back(*std::move(record));
  }
  while (!records.empty() && records.back().blank) records.pop_back();
  if (records.empty()) {
    return absl::InvalidArgumentError("empty CSV input: no header record");
  }
  std::vector<std::string> header = std::move(records.front().cells);
  std::vector<Dataset::Row> rows;
  rows.reserve(records.size() - 1);
  for (size_t i = 1; i < records.size(); ++i) {
    rows.push_back(std::move(records[i].cells));
  }
  return Dataset::Create(std::move(header), std::move(rows),
                         std::move(source_label));
}

absl::StatusOr<Dataset> LoadCsv(std::istream& in, std::string source_label) {
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  if (in.bad()) return absl::UnavailableError("read failed");
  return ParseCsv(text, std::move(source_label));
}

absl::StatusOr<Dataset> LoadCsvFile(const std::filesystem::path& path) {
  absl::StatusOr<std::string> text = ReadFile(path);
  if (!text.ok()) return text.status();
  absl::StatusOr<Dataset> dataset = ParseCsv(*text, path.string());
  if (!dataset.ok()) return Prefixed(dataset.status(), path.string());
  return dataset;
}

void WriteCsv(const Dataset& dataset, std::ostream& out) {
  auto write_record = [&out](const std::vector<std::string>& cells) {
    for (size_t i = 0; i < cells.size(); ++i) {
      if (i > 0) out << ',';
      const std::string& cell = cells[i];
      if (!NeedsQuotes(cell)) {
        out << cell;
        continue;
      }
      out << '"';
      for (char c : cell) {
        if (c == '"') out << '"';
        out << c;
      }
      out << '"';
    }
    out << '\n';
  };
  write_record(dataset.attributes());
  for (const Dataset::Row& row : dataset.rows()) write_record(row);
}

absl::StatusOr<MetadataDocument> ParseMetadata(std::string_view text) {
  json j = json::parse(text.begin(), text.end(), nullptr, false);
  if (j.is_discarded()) {
    try {
      j = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
      return absl::InvalidArgumentError(
          fmt::format("malformed JSON: {}", e.what()));
    }
    return absl::InvalidArgumentError("malformed JSON");
  }
  return ParseDocument(j);
}

absl::StatusOr<MetadataDocument> LoadMetadata(std::istream& in) {
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  if (in.bad()) return absl::UnavailableError("read failed");
  return ParseMetadata(text);
}

absl::StatusOr<MetadataDocument> LoadMetadataFile(
    const std::filesystem::path& path) {
  absl::StatusOr<std::string> text = ReadFile(path);
  if (!text.ok()) return text.status();
  absl::StatusOr<MetadataDocument> doc = ParseMetadata(*text);
  if (!doc.ok()) return Prefixed(doc.status(), path.string());
  return doc;
}

json MetadataToJson(const MetadataDocument& doc) {
  json attributes = json::array();
  for (const AttributeMeta& meta : doc.attributes) {
    json a = {{"name", meta.name}, {"role", RoleName(meta.role)}};
    if (meta.exposure) a["exposure"] = LevelLabel(*meta.exposure);
    if (meta.severity) a["severity"] = LevelsJson(*meta.severity);
    if (!meta.value_severity.empty()) {
      json values = json::object();
      for (const auto& [value, rating] : meta.value_severity) {
        values[value] = LevelsJson(rating);
      }
      a["value_severity"] = std::move(values);
    }
    attributes.push_back(std::move(a));
  }

  json out = {{"version", doc.version}, {"attributes", std::move(attributes)}};
  if (doc.exploitability_matrix || doc.risk_matrix) {
    json matrices = json::object();
    if (doc.exploitability_matrix) {
      matrices["exploitability"] = GridJson(*doc.exploitability_matrix);
    }
    if (doc.risk_matrix) matrices["risk"] = GridJson(*doc.risk_matrix);
    out["matrices"] = std::move(matrices);
  }
  json options = {{"flag_threshold", LevelValue(doc.options.flag_threshold)},
                  {"combination_strategy", StrategyName(doc.options.strategy)}};
  if (!doc.options.explicit_combinations.empty()) {
    options["explicit_combinations"] = doc.options.explicit_combinations;
  }
  out["options"] = std::move(options);
  return out;
}

}  // namespace reident
