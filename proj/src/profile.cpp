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

#include "upsample/profile.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "upsample/error.hpp"

#ifndef UPSAMPLE_DEFAULT_PROFILE_DIR
#define UPSAMPLE_DEFAULT_PROFILE_DIR "profiles"
#endif

namespace upsample {

namespace {

constexpr std::string_view kFields[] = {"name",
                                        "tau_comp_s_per_mac",
                                        "tau_mem_s_per_byte",
                                        "eps_comp_j_per_mac",
                                        "eps_mem_j_per_byte",
                                        "pi0_w"};

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad(std::size_t line, const std::string& what) {
  throw ParseError(ParseError::Kind::kBadProfile,
                   "profile line " + std::to_string(line) + ": " + what);
}

double positive_number(std::string_view key, std::string_view value, std::size_t line) {
  double v = 0;
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    bad(line, std::string(key) + " is not a number: '" + std::string(value) + "'");
  }
  if (!(v > 0) || !std::isfinite(v)) {
    bad(line, std::string(key) + " must be strictly positive");
  }
  return v;
}

}  // namespace

HardwareProfile parse_profile(std::string_view text) {
  std::map<std::string, std::pair<std::string, std::size_t>, std::less<>> seen;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) bad(line_no, "expected key = value");
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (std::find(std::begin(kFields), std::end(kFields), key) == std::end(kFields)) {
      bad(line_no, "unknown field '" + std::string(key) + "'");
    }
    if (value.empty()) bad(line_no, std::string(key) + " has no value");
    if (!seen.emplace(std::string(key), std::pair{std::string(value), line_no}).second) {
      bad(line_no, "duplicate field '" + std::string(key) + "'");
    }
  }

  for (std::string_view f : kFields) {
    if (seen.find(f) == seen.end()) {
      throw ParseError(ParseError::Kind::kBadProfile,
                       "profile is missing field '" + std::string(f) + "'");
    }
  }
  auto num = [&](std::string_view key) {
    const auto& [value, line] = seen.find(key)->second;
    return positive_number(key, value, line);
  };

  HardwareProfile hw;
  hw.name = seen.find("name")->second.first;
  hw.tau_comp = num("tau_comp_s_per_mac");
  hw.tau_mem = num("tau_mem_s_per_byte");
  hw.eps_comp = num("eps_comp_j_per_mac");
  hw.eps_mem = num("eps_mem_j_per_byte");
  hw.pi0 = num("pi0_w");
  return hw;
}

HardwareProfile load_profile_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open profile " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_profile(buf.str());
}

std::string format_profile(const HardwareProfile& hw) {
  std::ostringstream out;
  out.precision(17);
  out << "name = " << hw.name << '\n'
      << "tau_comp_s_per_mac = " << hw.tau_comp << '\n'
      << "tau_mem_s_per_byte = " << hw.tau_mem << '\n'
      << "eps_comp_j_per_mac = " << hw.eps_comp << '\n'
      << "eps_mem_j_per_byte = " << hw.eps_mem << '\n'
      << "pi0_w = " << hw.pi0 << '\n';
  return out.str();
}

std::vector<std::filesystem::path> profile_search_path() {
  std::vector<std::filesystem::path> dirs;
  if (const char* env = std::getenv("UPSAMPLE_PROFILE_DIR"); env != nullptr) {
    std::string_view rest = env;
    while (true) {
      const auto colon = rest.find(':');
      const std::string_view part = rest.substr(0, colon);
      if (!part.empty()) dirs.emplace_back(std::string(part));
      if (colon == std::string_view::npos) break;
      rest = rest.substr(colon + 1);
    }
  }
  dirs.emplace_back(UPSAMPLE_DEFAULT_PROFILE_DIR);
  return dirs;
}

HardwareProfile resolve_profile(const std::string& spec) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(spec, ec)) return load_profile_file(spec);
  for (const auto& dir : profile_search_path()) {
    const auto candidate = dir / (spec + ".profile");
    if (std::filesystem::is_regular_file(candidate, ec)) return load_profile_file(candidate);
  }
  throw IoError("no profile named '" + spec + "' on the search path");
}

std::vector<std::string> list_profiles() {
  std::set<std::string> names;
  for (const auto& dir : profile_search_path()) {
    std::error_code ec;
    for (const auto& entry : std::filesystem::directory_iterator(dir, ec)) {
      if (entry.path().extension() == ".profile") names.insert(entry.path().stem().string());
    }
  }
  return {names.begin(), names.end()};
}

}  // namespace upsample
