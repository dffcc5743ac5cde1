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

// Randomized functional-equivalence harness behind `upsample verify`.

#ifndef UPSAMPLE_VERIFY_HPP_
#define UPSAMPLE_VERIFY_HPP_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "upsample/tensor.hpp"

namespace upsample {

struct VerifyOptions {
  std::uint64_t seed = 42;
  std::uint64_t trials = 50;
  std::size_t max_extent = 16;  ///< largest input height / width drawn
  double tolerance = 1e-4;
  /// Run STRD without the kernel reversal. Exists only so the harness can
  /// prove it catches a broken formulation.
  bool inject_fault = false;
};

struct CaseResult {
  std::string kind;    ///< "deconv", "weight-shuffle" or "weight-convolution"
  std::string params;  ///< parameter tuple, enough to reproduce the case
  double max_error = 0;
  bool passed = true;
};

struct VerifyReport {
  std::vector<CaseResult> cases;
  bool passed() const noexcept;
};

/// Each trial draws one deconvolution instance and checks all ten pairs of
/// {standard, revd, revd2, strd, tdc}, then one sub-pixel and one NN resize
/// instance checked end to end through their kernel transformations.
VerifyReport run_verification(const VerifyOptions& options);

/// Uniform [-1, 1] tensor of the given extents.
Tensor random_tensor(const Dims& dims, std::mt19937_64& rng);

}  // namespace upsample

#endif  // UPSAMPLE_VERIFY_HPP_
