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

// Analytical time and energy model for convolution-based upsampling.
//
// Requirements are closed-form counts of MACs (C), weights (W) and
// activations (A) for a square H x H x C input, square K x K kernels and
// equal input / output channels. Costs follow the optimistic model
//
//   T = max(C * tau_comp, M * bytes * tau_mem)
//   E = C * eps_comp + M * bytes * eps_mem + pi0 * T,     M = W + A
//
// with per-MAC and per-byte unit costs from a HardwareProfile.

#ifndef UPSAMPLE_COSTMODEL_HPP_
#define UPSAMPLE_COSTMODEL_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace upsample {

/// High-level upsampling algorithm.
enum class Upsampler {
  kSubPixelConv,    ///< C-SP
  kResizeConv,      ///< C-NN
  kSubPixelDeconv,  ///< D-SP, deconvolution after the weight shuffle
  kResizeDeconv,    ///< D-NN, deconvolution after the weight convolution
};

/// Low-level deconvolution formulation; only meaningful for D-SP / D-NN.
enum class Lowering { kDefault, kRevd2, kStrd, kTdc };

struct Algorithm {
  Upsampler upsampler = Upsampler::kSubPixelDeconv;
  Lowering lowering = Lowering::kDefault;

  friend bool operator==(const Algorithm&, const Algorithm&) = default;
};

/// "C-SP", "C-NN", "D-SP", "D-NN", optionally followed by "/REVD2", "/STRD"
/// or "/TDC" for the deconvolutions. Throws DomainError otherwise.
Algorithm parse_algorithm(std::string_view label);
/// Canonical label; REVD2 (the default lowering) prints without a suffix.
std::string to_string(Algorithm algorithm);

struct WorkloadSpec {
  std::uint64_t height = 1024;
  std::uint64_t channels = 3;
  std::uint64_t kernel = 3;
  std::uint64_t factor = 1;
  std::uint64_t bytes_per_element = 4;

  /// Throws DomainError unless every field is >= 1 and the kernel is odd.
  void validate() const;
};

struct Requirements {
  std::uint64_t macs = 0;
  std::uint64_t weight_elems = 0;
  std::uint64_t activation_elems = 0;
  /// MACs that touch no inserted zero; the numerator of activation reuse.
  std::uint64_t useful_macs = 0;
  std::uint64_t bytes_per_element = 4;

  std::uint64_t memory_elems() const noexcept { return weight_elems + activation_elems; }
  double memory_bytes() const noexcept {
    return static_cast<double>(memory_elems()) * static_cast<double>(bytes_per_element);
  }
  double activation_bytes() const noexcept {
    return static_cast<double>(activation_elems) * static_cast<double>(bytes_per_element);
  }
};

/// Closed-form compute and memory requirements. Throws DomainError for an
/// unsupported combination (a lowering on C-SP / C-NN) or on overflow.
Requirements requirements(Algorithm algorithm, const WorkloadSpec& workload);

struct HardwareProfile {
  std::string name;
  double tau_comp = 0;  ///< s / MAC
  double tau_mem = 0;   ///< s / byte
  double eps_comp = 0;  ///< J / MAC
  double eps_mem = 0;   ///< J / byte
  double pi0 = 0;       ///< W

  /// Throws DomainError unless all costs are strictly positive and finite.
  void validate() const;
  /// B_tau = tau_mem / tau_comp, in MACs per byte.
  double time_balance() const noexcept { return tau_mem / tau_comp; }
  /// B_eps = eps_mem / eps_comp, in MACs per byte.
  double energy_balance() const noexcept { return eps_mem / eps_comp; }
};

enum class Bound { kCompute, kMemory };
std::string_view to_string(Bound bound) noexcept;

struct TimeCost {
  double seconds = 0;
  double compute_seconds = 0;
  double memory_seconds = 0;
  Bound bound = Bound::kCompute;  ///< kCompute when the compute term dominates or ties
};

struct EnergyCost {
  double joules = 0;
  double compute_joules = 0;
  double memory_joules = 0;
  double constant_joules = 0;
};

TimeCost time_cost(const Requirements& req, const HardwareProfile& hw);
EnergyCost energy_cost(const Requirements& req, const HardwareProfile& hw);

/// MACs per byte of all data moved.
double arithmetic_intensity(const Requirements& req);
/// Useful MACs per byte of activation data moved.
double activation_reuse(const Requirements& req);

struct RooflineCoordinate {
  double reuse = 0;       ///< x: arithmetic intensity (time) or activation reuse (energy)
  double attainable = 0;  ///< y: min(1, x / balance), fraction of peak
  double balance = 0;
  Bound bound = Bound::kCompute;
};

struct RooflinePoint {
  RooflineCoordinate time;
  RooflineCoordinate energy;
};

/// Normalized roof: min(1, reuse / balance).
double roofline_attainable(double reuse, double balance) noexcept;
RooflinePoint roofline_point(const Requirements& req, const HardwareProfile& hw);

/// Fraction of zeros in an H x H map after inserting S - 1 zeros between pixels.
double strd_zero_fraction(std::uint64_t height, std::uint64_t stride);
/// Fraction of zero taps in TDC slices of a K x K kernel at stride S.
double tdc_zero_fraction(std::uint64_t kernel, std::uint64_t stride);

struct CostReport {
  Algorithm algorithm;
  std::uint64_t factor = 1;
  Requirements req;
  TimeCost time;
  EnergyCost energy;
  double arithmetic_intensity = 0;
  double activation_reuse = 0;
  double energy_per_pixel = 0;  ///< J per output pixel, r^2 H^2 C of them
  double perf_per_energy = 0;   ///< useful MACs per J
  RooflinePoint roofline;
};

CostReport evaluate(Algorithm algorithm, const WorkloadSpec& workload, const HardwareProfile& hw);

struct SweepRow {
  CostReport report;
  double time_normalized = 0;
  double energy_normalized = 0;
};

struct SweepTable {
  std::vector<SweepRow> rows;
  WorkloadSpec workload;  ///< factor field unused; each row carries its own r
  std::string profile;
  std::string baseline;   ///< description of the normalization baseline
};

/// Label of the normalization baseline used by sweep().
inline constexpr std::string_view kSweepBaseline = "D-SP r=1";

/// One row per (algorithm, r), algorithm-major. T and E are normalized by
/// the D-SP (REVD2) costs at r = 1 on the same workload and profile; at
/// r = 1 D-SP under every lowering, and D-NN, coincide with that baseline.
SweepTable sweep(std::span<const Algorithm> algorithms, std::span<const std::uint64_t> factors,
                 const WorkloadSpec& workload, const HardwareProfile& hw);

}  // namespace upsample

#endif  // UPSAMPLE_COSTMODEL_HPP_
