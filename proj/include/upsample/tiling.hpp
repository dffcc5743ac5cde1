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

// Load-balance analysis of output tilings on a SIMD machine where each lane
// takes one tile per pass.

#ifndef UPSAMPLE_TILING_HPP_
#define UPSAMPLE_TILING_HPP_

#include <cstdint>
#include <string>
#include <string_view>

namespace upsample {

/// Execution strategies whose tiling legality differs.
enum class TiledAlgorithm { kRevd2, kRevd, kTdc, kStrdAsConv };

std::string_view to_string(TiledAlgorithm algorithm) noexcept;
/// "revd2", "revd", "tdc" or "strd"; throws DomainError otherwise.
TiledAlgorithm parse_tiled_algorithm(std::string_view name);

struct TilingScenario {
  std::uint64_t lanes = 16;
  std::uint64_t out_extent = 28;  ///< square output O_H = O_W
  std::uint64_t stride = 2;
  std::uint64_t tile = 7;         ///< square tile edge

  /// Throws DomainError unless every field is >= 1 and tile <= out_extent.
  void validate() const;
};

struct TileLegality {
  bool revd2 = true;
  bool revd = true;
  bool tdc = true;
  bool strd_as_conv = true;  ///< stride-1 convolution after zero insertion

  bool legal(TiledAlgorithm algorithm) const noexcept;
};

/// REVD and TDC need tile % S == 0; REVD2 and STRD accept any tile.
TileLegality tile_legality(std::uint64_t stride, std::uint64_t tile);

struct TilingReport {
  TilingScenario scenario;
  TiledAlgorithm algorithm = TiledAlgorithm::kRevd2;
  TileLegality legal_for;
  std::uint64_t workloads = 0;  ///< ceil(O / tile)^2
  std::uint64_t passes = 0;     ///< ceil(workloads / lanes)
  double utilization = 0;       ///< workloads / (passes * lanes)
  double overhead = 0;          ///< workloads * tile^2 / O^2, full tiles moved
};

/// Throws LegalityError when the tile breaks `algorithm`.
TilingReport analyze(const TilingScenario& scenario,
                     TiledAlgorithm algorithm = TiledAlgorithm::kRevd2);

std::string format_tiling_text(const TilingReport& report);
inline constexpr std::string_view kTilingCsvHeader =
    "algorithm,lanes,out_extent,stride,tile,workloads,passes,utilization,overhead,"
    "legal_revd2,legal_revd,legal_tdc,legal_strd";
std::string format_tiling_csv_row(const TilingReport& report);

}  // namespace upsample

#endif  // UPSAMPLE_TILING_HPP_
