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

// The three worked-example tables shipped with the tool (an original table, a
// 3-anonymous generalization of it and a HIPAA-style generalization), each
// with reference metadata so any of them can be assessed in one command.

#ifndef REIDENT_FIXTURES_H_
#define REIDENT_FIXTURES_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "absl/status/statusor.h"
#include "reident/model.h"

namespace reident::fixtures {

// "initial", "kanon", "hipaa".
std::span<const std::string_view> Names();

absl::StatusOr<Dataset> Table(std::string_view name);

// Reference metadata document, as JSON text.
absl::StatusOr<std::string> MetadataJson(std::string_view name);

// Name of the bundled table `dataset` reproduces cell for cell, if any.
std::optional<std::string_view> Match(const Dataset& dataset);

// Explanatory note attached to assessments of a bundled table whose reference
// ratings are not all reproducible from its rows.
std::optional<std::string> ReferenceNote(const Dataset& dataset);

}  // namespace reident::fixtures

#endif  // REIDENT_FIXTURES_H_
