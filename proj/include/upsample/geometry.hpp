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

#ifndef UPSAMPLE_GEOMETRY_HPP_
#define UPSAMPLE_GEOMETRY_HPP_

#include <cstdint>

namespace upsample {

/// Non-negative remainder, also for negative dividends.
constexpr std::int64_t floor_mod(std::int64_t a, std::int64_t b) noexcept {
  const std::int64_t m = a % b;
  return m < 0 ? m + b : m;
}

constexpr std::int64_t floor_div(std::int64_t a, std::int64_t b) noexcept {
  return (a - floor_mod(a, b)) / b;
}

constexpr std::int64_t ceil_div(std::int64_t a, std::int64_t b) noexcept {
  return floor_div(a + b - 1, b);
}

/// Square convolution geometry.
struct ConvParams {
  int kernel = 1;
  int stride = 1;
  int padding = 0;

  /// Throws GeometryError unless K >= 1, S >= 1, P >= 0.
  void validate() const;
  /// S == 1 and K == 2P + 1.
  bool same_padded() const noexcept { return stride == 1 && kernel == 2 * padding + 1; }

  friend bool operator==(const ConvParams&, const ConvParams&) = default;
};

/// Square deconvolution geometry (kernel K^D, stride S, padding P^D).
struct DeconvParams {
  int kernel = 1;
  int stride = 1;
  int padding = 0;

  /// Throws GeometryError unless K >= 1, S >= 1, P >= 0.
  void validate() const;
  /// S * (in - 1) + K - 2P; may be non-positive for invalid geometry.
  std::int64_t output_extent(std::int64_t in) const noexcept {
    return static_cast<std::int64_t>(stride) * (in - 1) + kernel - 2 * padding;
  }

  friend bool operator==(const DeconvParams&, const DeconvParams&) = default;
};

/// Integer upsampling factor r >= 1.
class UpsampleFactor {
 public:
  /// Throws GeometryError for r < 1.
  explicit UpsampleFactor(int r);
  int value() const noexcept { return r_; }

  friend bool operator==(const UpsampleFactor&, const UpsampleFactor&) = default;

 private:
  int r_;
};

/// Counts executions of an algorithm's innermost multiply-accumulate body.
///
/// Every trip of the loop nest counts, including trips whose operand falls in
/// zero padding or in an inserted zero; this is the convention the analytical
/// requirement tables follow.
struct MacCounter {
  std::uint64_t macs = 0;
};

}  // namespace upsample

#endif  // UPSAMPLE_GEOMETRY_HPP_
