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

// Deterministic CSV and SVG renderings of cost sweeps.

#ifndef UPSAMPLE_REPORT_HPP_
#define UPSAMPLE_REPORT_HPP_

#include <string>
#include <string_view>

#include "upsample/costmodel.hpp"

namespace upsample {

/// Shortest decimal that round-trips to the same double.
std::string format_number(double value);

inline constexpr std::string_view kSweepCsvHeader =
    "algorithm,r,macs,weight_bytes,activation_bytes,T_s,E_j,AI,act_reuse,E_per_pixel,PPE,"
    "T_normalized,E_normalized,bound_time,bound_energy";

/// '#'-prefixed metadata lines (baseline, profile, workload), the header and
/// one row per sweep entry.
std::string sweep_to_csv(const SweepTable& table);

/// Three panels: normalized T vs r, normalized E vs r, and the time and
/// energy roofline scatter. Coordinates are rounded to 3 decimals.
std::string sweep_to_svg(const SweepTable& table);

}  // namespace upsample

#endif  // UPSAMPLE_REPORT_HPP_
