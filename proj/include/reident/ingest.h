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

// Loading datasets from CSV and attribute metadata from JSON.
//
// CSV dialect: comma separated, RFC 4180 quoting, first record is the header.
// Unquoted cells are trimmed of surrounding spaces and tabs; quoted cells are
// kept verbatim. A UTF-8 byte order mark is skipped and trailing blank lines
// are ignored.

#ifndef REIDENT_INGEST_H_
#define REIDENT_INGEST_H_

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "nlohmann/json.hpp"
#include "reident/model.h"

namespace reident {

absl::StatusOr<Dataset> ParseCsv(std::string_view text,
                                 std::string source_label = "");
absl::StatusOr<Dataset> LoadCsv(std::istream& in,
                                std::string source_label = "");
// NotFound/Unavailable for I/O failures, InvalidArgument for malformed input.
absl::StatusOr<Dataset> LoadCsvFile(const std::filesystem::path& path);

// Quotes only the cells that need it (and empty cells, so they survive).
void WriteCsv(const Dataset& dataset, std::ostream& out);

// Everything an analyst decides by hand for an assessment.
struct MetadataDocument {
  int version = 1;
  std::vector<AttributeMeta> attributes;
  std::optional<ScaleMatrix> exploitability_matrix;
  std::optional<ScaleMatrix> risk_matrix;
  AssessmentOptions options;

  friend bool operator==(const MetadataDocument&,
                         const MetadataDocument&) = default;
};

inline constexpr int kMetadataVersion = 1;

// Structural validation only; cross-checks against a dataset are ValidateMeta's
// job. Errors name the offending JSON pointer, e.g. "/attributes/2/exposure".
absl::StatusOr<MetadataDocument> ParseMetadata(std::string_view text);
absl::StatusOr<MetadataDocument> LoadMetadata(std::istream& in);
absl::StatusOr<MetadataDocument> LoadMetadataFile(
    const std::filesystem::path& path);

nlohmann::json MetadataToJson(const MetadataDocument& doc);

}  // namespace reident

#endif  // REIDENT_INGEST_H_
