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

#include "upsample/verify.hpp"

#include <algorithm>
#include <array>
#include <sstream>

#include "upsample/deconv.hpp"
#include "upsample/ops.hpp"
#include "upsample/transforms.hpp"

namespace upsample {

namespace {

int draw(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

CaseResult deconv_case(const VerifyOptions& opt, std::mt19937_64& rng) {
  const int max_extent = static_cast<int>(std::max<std::size_t>(opt.max_extent, 1));
  DeconvParams p;
  int ic = 0, oc = 0, h = 0, w = 0;
  do {
    ic = draw(rng, 1, 4);
    oc = draw(rng, 1, 4);
    h = draw(rng, 1, max_extent);
    w = draw(rng, 1, max_extent);
    p.kernel = draw(rng, 2, 6);
    p.stride = draw(rng, 1, 3);
    p.padding = draw(rng, 0, 2);
  } while (p.output_extent(h) < 1 || p.output_extent(w) < 1);

  const Tensor input = random_tensor({std::size_t(ic), std::size_t(h), std::size_t(w)}, rng);
  const DeconvKernels k(random_tensor(
      {std::size_t(ic), std::size_t(oc), std::size_t(p.kernel), std::size_t(p.kernel)}, rng));

  const std::array<Tensor, 5> out = {
      deconv_standard(input, k, p),
      deconv_revd(input, k, p),
      deconv_revd2(input, k, p),
      detail::deconv_strd_impl(input, k, p, !opt.inject_fault, nullptr, nullptr),
      deconv_tdc(input, tdc_transform_kernels(k, p.stride), p),
  };
  double err = 0;
  for (std::size_t a = 0; a < out.size(); ++a) {
    for (std::size_t b = a + 1; b < out.size(); ++b) err = std::max(err, max_abs_diff(out[a], out[b]));
  }

  std::ostringstream desc;
  desc << "I_C=" << ic << " O_C=" << oc << " H=" << h << " W=" << w << " K=" << p.kernel
       << " S=" << p.stride << " P=" << p.padding;
  return {"deconv", desc.str(), err, err <= opt.tolerance};
}

CaseResult transform_case(bool shuffle, const VerifyOptions& opt, std::mt19937_64& rng) {
  const int max_extent = static_cast<int>(std::clamp<std::size_t>(opt.max_extent, 1, 8));
  const int kernel = 2 * draw(rng, 1, 4) + 1;
  const int pad = kernel / 2;
  const int r = draw(rng, 1, 4);
  const int ic = draw(rng, 1, 3);
  const int oc = draw(rng, 1, 3);
  const int h = draw(rng, 1, max_extent);
  const int w = draw(rng, 1, max_extent);
  const UpsampleFactor factor(r);
  const ConvParams cp{kernel, 1, pad};

  const Tensor input = random_tensor({std::size_t(ic), std::size_t(h), std::size_t(w)}, rng);
  const std::size_t conv_out = shuffle ? std::size_t(r * r * oc) : std::size_t(oc);
  const Tensor conv_k =
      random_tensor({conv_out, std::size_t(ic), std::size_t(kernel), std::size_t(kernel)}, rng);

  const Tensor reference = shuffle ? subpixel_conv(input, conv_k, cp, factor)
                                   : resize_conv(input, conv_k, cp, factor);
  const TransformedKernels t =
      shuffle ? weight_shuffle(conv_k, factor) : weight_convolution(conv_k, factor);
  const DeconvParams& dp = t.provenance.deconv;
  double err = max_abs_diff(reference, deconv_standard(input, t.kernels, dp));
  err = std::max(err, max_abs_diff(reference, deconv_revd2(input, t.kernels, dp)));

  std::ostringstream desc;
  desc << "I_C=" << ic << " O_C=" << oc << " H=" << h << " W=" << w << " K=" << kernel
       << " r=" << r;
  return {shuffle ? "weight-shuffle" : "weight-convolution", desc.str(), err,
          err <= opt.tolerance};
}

}  // namespace

bool VerifyReport::passed() const noexcept {
  return std::all_of(cases.begin(), cases.end(), [](const CaseResult& c) { return c.passed; });
}

Tensor random_tensor(const Dims& dims, std::mt19937_64& rng) {
  std::uniform_real_distribution<float> dist(-1.0f, 1.0f);
  std::vector<float> data(element_count(dims));
  for (float& v : data) v = dist(rng);
  return Tensor(dims, std::move(data));
}

VerifyReport run_verification(const VerifyOptions& opt) {
  std::mt19937_64 rng(opt.seed);
  VerifyReport report;
  for (std::uint64_t i = 0; i < opt.trials; ++i) {
    report.cases.push_back(deconv_case(opt, rng));
    report.cases.push_back(transform_case(true, opt, rng));
    report.cases.push_back(transform_case(false, opt, rng));
  }
  return report;
}

}  // namespace upsample
