// Copyright 2026 The Upsample Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// The `upsample` command line, as a library so tests can drive it in-process.
//
// Exit status: 0 success, 1 verification failure, 2 usage error (including
// illegal tilings and unknown algorithms), 3 I/O, parse or data error.

#ifndef UPSAMPLE_CLI_HPP_
#define UPSAMPLE_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace upsample {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitData = 3;

/// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace upsample

#endif  // UPSAMPLE_CLI_HPP_
