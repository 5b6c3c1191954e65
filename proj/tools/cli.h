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

// Command-line front end. Run() is the whole program minus process setup so
// tests can drive it with in-memory streams.

#ifndef REIDENT_TOOLS_CLI_H_
#define REIDENT_TOOLS_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace reident::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // I/O or parse failure
inline constexpr int kExitInvalid = 2;  // usage or validation error

// `args` excludes the program name. Reports go to `out`, diagnostics to
// `err`. With `styled`, the "error:" prefix is coloured.
int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err, bool styled);

}  // namespace reident::cli

#endif  // REIDENT_TOOLS_CLI_H_
