// Copyright 2026 The ksforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef KSFORGE_CLI_H
#define KSFORGE_CLI_H

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace ksforge {

/// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitUsage = 2;

/// Runs the command line (without the program name). The JSON report goes to
/// out, diagnostics to err. Returns the exit code.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

/// 64-bit FNV-1a, continuing from h.
uint64_t fnv1a64(std::string_view data, uint64_t h = 14695981039346656037ull);

}  // namespace ksforge

#endif
