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

#include "upsample/costmodel.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>

#include "upsample/error.hpp"

namespace upsample {

namespace {

using u64 = std::uint64_t;

u64 mul(std::initializer_list<u64> factors) {
  u64 acc = 1;
  for (u64 f : factors) {
    if (__builtin_mul_overflow(acc, f, &acc)) {
      throw DomainError("requirement count overflows 64 bits");
    }
  }
  return acc;
}

u64 add(u64 a, u64 b) {
  u64 s;
  if (__builtin_add_overflow(a, b, &s)) throw DomainError("requirement count overflows 64 bits");
  return s;
}

u64 ceil_div_u(u64 a, u64 b) { return (a + b - 1) / b; }

}  // namespace

Algorithm parse_algorithm(std::string_view label) {
  const auto slash = label.find('/');
  const std::string_view head = label.substr(0, slash);
  const std::string_view tail = slash == std::string_view::npos ? "" : label.substr(slash + 1);

  Algorithm a;
  if (head == "C-SP") {
    a.upsampler = Upsampler::kSubPixelConv;
  } else if (head == "C-NN") {
    a.upsampler = Upsampler::kResizeConv;
  } else if (head == "D-SP") {
    a.upsampler = Upsampler::kSubPixelDeconv;
  } else if (head == "D-NN") {
    a.upsampler = Upsampler::kResizeDeconv;
  } else {
    throw DomainError("unknown algorithm '" + std::string(label) + "'");
  }

  if (slash == std::string_view::npos) return a;
  const bool deconv =
      a.upsampler == Upsampler::kSubPixelDeconv || a.upsampler == Upsampler::kResizeDeconv;
  if (!deconv) {
    throw DomainError("'" + std::string(label) + "': convolutions have no deconv lowering");
  }
  if (tail == "REVD2") {
    a.lowering = Lowering::kRevd2;
  } else if (tail == "STRD") {
    a.lowering = Lowering::kStrd;
  } else if (tail == "TDC") {
    a.lowering = Lowering::kTdc;
  } else {
    throw DomainError("unknown deconv lowering '" + std::string(tail) + "'");
  }
  return a;
}

std::string to_string(Algorithm a) {
  std::string s;
  switch (a.upsampler) {
    case Upsampler::kSubPixelConv: s = "C-SP"; break;
    case Upsampler::kResizeConv: s = "C-NN"; break;
    case Upsampler::kSubPixelDeconv: s = "D-SP"; break;
    case Upsampler::kResizeDeconv: s = "D-NN"; break;
  }
  switch (a.lowering) {
    case Lowering::kDefault:
    case Lowering::kRevd2: break;
    case Lowering::kStrd: s += "/STRD"; break;
    case Lowering::kTdc: s += "/TDC"; break;
  }
  return s;
}

std::string_view to_string(Bound bound) noexcept {
  return bound == Bound::kCompute ? "compute-bound" : "memory-bound";
}

void WorkloadSpec::validate() const {
  if (height < 1 || channels < 1 || kernel < 1 || factor < 1 || bytes_per_element < 1) {
    throw DomainError("workload fields must all be >= 1");
  }
  if (kernel % 2 == 0) {
    throw DomainError("workload kernel size must be odd, got " + std::to_string(kernel));
  }
}

Requirements requirements(Algorithm algorithm, const WorkloadSpec& w) {
  w.validate();
  const u64 h = w.height;
  const u64 c = w.channels;
  const u64 k = w.kernel;
  const u64 r = w.factor;

  const bool conv = algorithm.upsampler == Upsampler::kSubPixelConv ||
                    algorithm.upsampler == Upsampler::kResizeConv;
  if (conv && algorithm.lowering != Lowering::kDefault) {
    throw DomainError(to_string(algorithm) + ": convolutions have no deconv lowering");
  }
  const Lowering low =
      algorithm.lowering == Lowering::kDefault ? Lowering::kRevd2 : algorithm.lowering;

  // Deconvolution kernel size and taps per output pixel per axis.
  const u64 nn_kernel = r + k - 1;
  const u64 nn_taps = ceil_div_u(nn_kernel, r);
  const u64 pad_h = (h - 1) * (r - 1);
  const u64 strd_acts = mul({add(mul({r, r, h, h}), mul({h + pad_h, h + pad_h}) ), c});
  const u64 lr_hr_acts = mul({1 + r * r, h, h, c});

  Requirements req;
  req.bytes_per_element = w.bytes_per_element;
  switch (algorithm.upsampler) {
    case Upsampler::kSubPixelConv:
      req.macs = mul({r, r, k, k, h, h, c, c});
      req.weight_elems = mul({r, r, k, k, c, c});
      req.activation_elems = mul({1 + 3 * r * r, h, h, c});
      req.useful_macs = req.macs;
      break;
    case Upsampler::kResizeConv:
      req.macs = mul({r, r, k, k, h, h, c, c});
      req.weight_elems = mul({k, k, c, c});
      req.activation_elems = mul({1 + 3 * r * r, h, h, c});
      req.useful_macs = req.macs;
      break;
    case Upsampler::kSubPixelDeconv:
      req.useful_macs = mul({r, r, k, k, h, h, c, c});
      req.weight_elems = mul({r, r, k, k, c, c});
      if (low == Lowering::kStrd) {
        req.macs = mul({r, r, r, r, k, k, h, h, c, c});
        req.activation_elems = strd_acts;
      } else {
        req.macs = req.useful_macs;
        req.activation_elems = lr_hr_acts;
      }
      break;
    case Upsampler::kResizeDeconv:
      req.useful_macs = mul({r, r, nn_taps, nn_taps, h, h, c, c});
      switch (low) {
        case Lowering::kStrd:
          req.macs = mul({r, r, nn_kernel, nn_kernel, h, h, c, c});
          req.weight_elems = mul({nn_kernel, nn_kernel, c, c});
          req.activation_elems = strd_acts;
          break;
        case Lowering::kTdc:
          req.macs = req.useful_macs;
          req.weight_elems = mul({r, r, nn_taps, nn_taps, c, c});
          req.activation_elems = lr_hr_acts;
          break;
        default:
          req.macs = req.useful_macs;
          req.weight_elems = mul({nn_kernel, nn_kernel, c, c});
          req.activation_elems = lr_hr_acts;
          break;
      }
      break;
  }
  add(req.weight_elems, req.activation_elems);
  return req;
}

void HardwareProfile::validate() const {
  for (double v : {tau_comp, tau_mem, eps_comp, eps_mem, pi0}) {
    if (!(v > 0) || !std::isfinite(v)) {
      throw DomainError("hardware profile '" + name + "' has a non-positive cost");
    }
  }
}

TimeCost time_cost(const Requirements& req, const HardwareProfile& hw) {
  TimeCost t;
  t.compute_seconds = static_cast<double>(req.macs) * hw.tau_comp;
  t.memory_seconds = req.memory_bytes() * hw.tau_mem;
  t.bound = t.compute_seconds >= t.memory_seconds ? Bound::kCompute : Bound::kMemory;
  t.seconds = std::max(t.compute_seconds, t.memory_seconds);
  return t;
}

EnergyCost energy_cost(const Requirements& req, const HardwareProfile& hw) {
  EnergyCost e;
  e.compute_joules = static_cast<double>(req.macs) * hw.eps_comp;
  e.memory_joules = req.memory_bytes() * hw.eps_mem;
  e.constant_joules = hw.pi0 * time_cost(req, hw).seconds;
  e.joules = e.compute_joules + e.memory_joules + e.constant_joules;
  return e;
}

double arithmetic_intensity(const Requirements& req) {
  return static_cast<double>(req.macs) / req.memory_bytes();
}

double activation_reuse(const Requirements& req) {
  return static_cast<double>(req.useful_macs) / req.activation_bytes();
}

double roofline_attainable(double reuse, double balance) noexcept {
  return std::min(1.0, reuse / balance);
}

RooflinePoint roofline_point(const Requirements& req, const HardwareProfile& hw) {
  auto coord = [](double x, double balance) {
    RooflineCoordinate c;
    c.reuse = x;
    c.balance = balance;
    c.attainable = roofline_attainable(x, balance);
    c.bound = x >= balance ? Bound::kCompute : Bound::kMemory;
    return c;
  };
  return {coord(arithmetic_intensity(req), hw.time_balance()),
          coord(activation_reuse(req), hw.energy_balance())};
}

double strd_zero_fraction(std::uint64_t height, std::uint64_t stride) {
  if (height < 1 || stride < 1) throw DomainError("strd_zero_fraction needs H, S >= 1");
  const double h = static_cast<double>(height);
  const double extent = static_cast<double>(stride) * (h - 1.0) + 1.0;
  return 1.0 - (h * h) / (extent * extent);
}

double tdc_zero_fraction(std::uint64_t kernel, std::uint64_t stride) {
  if (kernel < 1 || stride < 1) throw DomainError("tdc_zero_fraction needs K, S >= 1");
  const double kt = static_cast<double>(ceil_div_u(kernel, stride));
  const double k = static_cast<double>(kernel);
  const double s = static_cast<double>(stride);
  return 1.0 - (k * k) / (s * s * kt * kt);
}

CostReport evaluate(Algorithm algorithm, const WorkloadSpec& workload, const HardwareProfile& hw) {
  hw.validate();
  CostReport rep;
  rep.algorithm = algorithm;
  rep.factor = workload.factor;
  rep.req = requirements(algorithm, workload);
  rep.time = time_cost(rep.req, hw);
  rep.energy = energy_cost(rep.req, hw);
  rep.arithmetic_intensity = arithmetic_intensity(rep.req);
  rep.activation_reuse = activation_reuse(rep.req);
  const double pixels = static_cast<double>(workload.factor * workload.factor) *
                        static_cast<double>(workload.height * workload.height) *
                        static_cast<double>(workload.channels);
  rep.energy_per_pixel = rep.energy.joules / pixels;
  rep.perf_per_energy = static_cast<double>(rep.req.useful_macs) / rep.energy.joules;
  rep.roofline = roofline_point(rep.req, hw);
  return rep;
}

SweepTable sweep(std::span<const Algorithm> algorithms, std::span<const std::uint64_t> factors,
                 const WorkloadSpec& workload, const HardwareProfile& hw) {
  if (algorithms.empty() || factors.empty()) {
    throw DomainError("sweep needs at least one algorithm and one upsampling factor");
  }
  WorkloadSpec base = workload;
  base.factor = 1;
  const CostReport baseline = evaluate(Algorithm{Upsampler::kSubPixelDeconv}, base, hw);

  SweepTable table;
  table.workload = workload;
  table.profile = hw.name;
  table.baseline = std::string(kSweepBaseline);
  for (const Algorithm& a : algorithms) {
    for (std::uint64_t r : factors) {
      WorkloadSpec w = workload;
      w.factor = r;
      SweepRow row;
      row.report = evaluate(a, w, hw);
      row.time_normalized = row.report.time.seconds / baseline.time.seconds;
      row.energy_normalized = row.report.energy.joules / baseline.energy.joules;
      table.rows.push_back(row);
    }
  }
  return table;
}

}  // namespace upsample
