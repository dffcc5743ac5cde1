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

// Hardware profiles: one key = value pair per line, '#' starts a comment.
//
//   name               = gtx680
//   tau_comp_s_per_mac = 3.2362e-13
//   tau_mem_s_per_byte = 5.2013e-12
//   eps_comp_j_per_mac = 4.32e-11
//   eps_mem_j_per_byte = 4.37e-10
//   pi0_w              = 66.4
//
// Every field is required exactly once and every cost must be > 0.

#ifndef UPSAMPLE_PROFILE_HPP_
#define UPSAMPLE_PROFILE_HPP_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "upsample/costmodel.hpp"

namespace upsample {

/// Throws ParseError (kind kBadProfile) on missing, duplicate, unknown or
/// non-positive fields.
HardwareProfile parse_profile(std::string_view text);
HardwareProfile load_profile_file(const std::filesystem::path& path);
std::string format_profile(const HardwareProfile& profile);

/// Directories searched for "<name>.profile": $UPSAMPLE_PROFILE_DIR first
/// (colon separated), then the bundled profile directory.
std::vector<std::filesystem::path> profile_search_path();

/// `spec` is either a path to an existing file or a profile name looked up
/// on the search path. Throws IoError when nothing matches.
HardwareProfile resolve_profile(const std::string& spec);

/// Names of all profiles visible on the search path, sorted, first hit wins.
std::vector<std::string> list_profiles();

}  // namespace upsample

#endif  // UPSAMPLE_PROFILE_HPP_
