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

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "upsample/costmodel.hpp"
#include "upsample/deconv.hpp"
#include "upsample/error.hpp"
#include "upsample/ops.hpp"
#include "upsample/transforms.hpp"

namespace upsample {
namespace {

void expect_deconv(const DeconvParams& p, int k, int s, int pad) {
  EXPECT_EQ(p.kernel, k);
  EXPECT_EQ(p.stride, s);
  EXPECT_EQ(p.padding, pad);
}

TEST(Derivation, SubPixel) {
  expect_deconv(derive_params_subpixel(3, 1, UpsampleFactor(2)).deconv, 6, 2, 2);
  expect_deconv(derive_params_subpixel(5, 2, UpsampleFactor(1)).deconv, 5, 1, 2);
  expect_deconv(derive_params_subpixel(9, 4, UpsampleFactor(3)).deconv, 27, 3, 12);
}

TEST(Derivation, NnResize) {
  expect_deconv(derive_params_nn(3, 1, UpsampleFactor(2)).deconv, 4, 2, 1);
  expect_deconv(derive_params_nn(7, 3, UpsampleFactor(1)).deconv, 7, 1, 3);
  expect_deconv(derive_params_nn(5, 2, UpsampleFactor(4)).deconv, 8, 4, 2);
}

TEST(Derivation, OutputExtentIsRTimesH) {
  for (int k : {1, 3, 5, 7, 9})
    for (int r = 1; r <= 5; ++r)
      for (int h = 1; h <= 20; ++h) {
        EXPECT_EQ(derive_params_subpixel(k, k / 2, UpsampleFactor(r)).deconv.output_extent(h), r * h);
        EXPECT_EQ(derive_params_nn(k, k / 2, UpsampleFactor(r)).deconv.output_extent(h), r * h);
      }
}

TEST(Derivation, RejectsInvalidKernels) {
  EXPECT_THROW(derive_params_subpixel(4, 1, UpsampleFactor(2)), InvalidKernelError);
  EXPECT_THROW(derive_params_subpixel(5, 1, UpsampleFactor(2)), InvalidKernelError);
  EXPECT_THROW(derive_params_nn(2, 0, UpsampleFactor(2)), InvalidKernelError);
}

TEST(WeightShuffle, OneByOneAtR1IsUnchanged) {
  const auto t = weight_shuffle(Tensor({1, 1, 1, 1}, {0.75f}), UpsampleFactor(1));
  EXPECT_EQ(t.kernels.tensor().dims(), (Dims{1, 1, 1, 1}));
  EXPECT_EQ(t.kernels.tensor()[0], 0.75f);
}

TEST(WeightShuffle, MatchesIndexMap) {
  std::mt19937 rng(1);
  for (int r = 1; r <= 3; ++r) {
    const Tensor conv = oracle::random_tensor({std::size_t(r * r * 2), 3, 3, 3}, rng);
    const auto t = weight_shuffle(conv, UpsampleFactor(r));
    EXPECT_TRUE(t.kernels.tensor().bitwise_equal(oracle::weight_shuffle(conv, r)));
    std::vector<float> a(conv.data().begin(), conv.data().end());
    std::vector<float> b(t.kernels.tensor().data().begin(), t.kernels.tensor().data().end());
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    EXPECT_EQ(a, b);
  }
}

TEST(WeightShuffle, ProvenanceRecord) {
  const auto t = weight_shuffle(Tensor({4, 1, 3, 3}), UpsampleFactor(2));
  EXPECT_EQ(t.provenance.source, SourceAlgorithm::kSubPixel);
  EXPECT_EQ(t.provenance.transformation, Transformation::kWeightShuffle);
  EXPECT_EQ(t.provenance.kernel, 3);
  EXPECT_EQ(t.provenance.padding, 1);
  EXPECT_EQ(t.provenance.factor, 2);
  expect_deconv(t.provenance.deconv, 6, 2, 2);
  EXPECT_EQ(t.provenance.checksum, payload_checksum(t.kernels.tensor()));
}

TEST(WeightShuffle, RejectsIndivisibleChannels) {
  EXPECT_THROW(weight_shuffle(Tensor({6, 1, 3, 3}), UpsampleFactor(2)), ShapeError);
  EXPECT_THROW(weight_shuffle(Tensor({4, 1, 2, 2}), UpsampleFactor(2)), InvalidKernelError);
}

TEST(WeightShuffle, EndToEndEqualsSubpixelConv) {
  std::mt19937 rng(2);
  const Tensor x = oracle::random_tensor({3, 8, 8}, rng);
  const Tensor conv = oracle::random_tensor({12, 3, 3, 3}, rng);
  const auto t = weight_shuffle(conv, UpsampleFactor(2));
  const Tensor ref = subpixel_conv(x, conv, {3, 1, 1}, UpsampleFactor(2));
  const DeconvParams& p = t.provenance.deconv;
  EXPECT_LE(max_abs_diff(ref, deconv_standard(x, t.kernels, p)), 1e-4);
  EXPECT_LE(max_abs_diff(ref, deconv_revd(x, t.kernels, p)), 1e-4);
  EXPECT_LE(max_abs_diff(ref, deconv_revd2(x, t.kernels, p)), 1e-4);
  EXPECT_LE(max_abs_diff(ref, deconv_strd(x, t.kernels, p)), 1e-4);
  EXPECT_LE(max_abs_diff(ref, deconv_tdc(x, tdc_transform_kernels(t.kernels, 2), p)), 1e-4);
}

TEST(WeightConvolution, R1IsReversal) {
  std::mt19937 rng(3);
  const Tensor conv = oracle::random_tensor({2, 3, 5, 5}, rng);
  const auto t = weight_convolution(conv, UpsampleFactor(1));
  for (std::size_t o = 0; o < 2; ++o)
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t a = 0; a < 5; ++a)
        for (std::size_t b = 0; b < 5; ++b)
          EXPECT_EQ(t.kernels.tensor()(i, o, a, b), conv(o, i, 4 - a, 4 - b));
}

// w^D row 1 of the 4x4 kernel for K = 3, r = 2, with w indexed (row, col).
TEST(WeightConvolution, ClosedFormSumsForK3R2) {
  Tensor conv({1, 1, 3, 3});
  for (std::size_t i = 0; i < 9; ++i) conv[i] = static_cast<float>(1 << i);
  auto w = [&](int h, int c) { return conv(0, 0, h, c); };
  const Tensor d = weight_convolution(conv, UpsampleFactor(2)).kernels.tensor();
  ASSERT_EQ(d.dims(), (Dims{1, 1, 4, 4}));
  EXPECT_EQ(d(0, 0, 1, 0), w(1, 2) + w(2, 2));
  EXPECT_EQ(d(0, 0, 1, 1), w(1, 1) + w(2, 1) + w(1, 2) + w(2, 2));
  EXPECT_EQ(d(0, 0, 1, 2), w(1, 0) + w(1, 1) + w(2, 0) + w(2, 1));
  EXPECT_EQ(d(0, 0, 1, 3), w(1, 0) + w(2, 0));
}

TEST(WeightConvolution, TotalIsRSquaredTimesSource) {
  std::mt19937 rng(4);
  for (int r = 1; r <= 4; ++r) {
    const Tensor conv = oracle::random_tensor({2, 2, 3, 3}, rng);
    const Tensor d = weight_convolution(conv, UpsampleFactor(r)).kernels.tensor();
    const double src = std::accumulate(conv.data().begin(), conv.data().end(), 0.0);
    const double dst = std::accumulate(d.data().begin(), d.data().end(), 0.0);
    EXPECT_NEAR(dst, r * r * src, 1e-4);
  }
}

TEST(WeightConvolution, EndToEndEqualsResizeConv) {
  std::mt19937 rng(5);
  const Tensor x = oracle::random_tensor({3, 8, 8}, rng);
  const Tensor conv = oracle::random_tensor({3, 3, 3, 3}, rng);
  const auto t = weight_convolution(conv, UpsampleFactor(2));
  EXPECT_EQ(t.provenance.source, SourceAlgorithm::kNnResize);
  EXPECT_EQ(t.provenance.transformation, Transformation::kWeightConvolution);
  const DeconvParams& p = t.provenance.deconv;
  expect_deconv(p, 4, 2, 1);
  const Tensor ref = resize_conv(x, conv, {3, 1, 1}, UpsampleFactor(2));
  EXPECT_LE(max_abs_diff(ref, deconv_standard(x, t.kernels, p)), 1e-4);
  EXPECT_LE(max_abs_diff(ref, deconv_revd2(x, t.kernels, p)), 1e-4);
  EXPECT_LE(max_abs_diff(ref, deconv_strd(x, t.kernels, p)), 1e-4);
  EXPECT_LE(max_abs_diff(ref, deconv_tdc(x, tdc_transform_kernels(t.kernels, 2), p)), 1e-4);
}

TEST(WeightTransforms, FullGridAcrossVariants) {
  std::mt19937 rng(6);
  for (int k : {3, 5, 7, 9})
    for (int r = 1; r <= 4; ++r) {
      const std::size_t ic = 1 + rng() % 3, oc = 1 + rng() % 3, h = 1 + rng() % 8;
      const Tensor x = oracle::random_tensor({ic, h, h}, rng);
      const std::size_t ks = std::size_t(k);
      const Tensor sp = oracle::random_tensor({std::size_t(r * r) * oc, ic, ks, ks}, rng);
      const Tensor nn = oracle::random_tensor({oc, ic, ks, ks}, rng);
      const ConvParams cp{k, 1, k / 2};
      const auto ts = weight_shuffle(sp, UpsampleFactor(r));
      const auto tn = weight_convolution(nn, UpsampleFactor(r));
      const Tensor ref_s = subpixel_conv(x, sp, cp, UpsampleFactor(r));
      const Tensor ref_n = resize_conv(x, nn, cp, UpsampleFactor(r));
      EXPECT_LE(max_abs_diff(ref_s, deconv_revd2(x, ts.kernels, ts.provenance.deconv)), 1e-4);
      EXPECT_LE(max_abs_diff(ref_s, deconv_tdc(x, tdc_transform_kernels(ts.kernels, r),
                                               ts.provenance.deconv)), 1e-4);
      EXPECT_LE(max_abs_diff(ref_n, deconv_revd(x, tn.kernels, tn.provenance.deconv)), 1e-4);
      EXPECT_LE(max_abs_diff(ref_n, deconv_strd(x, tn.kernels, tn.provenance.deconv)), 1e-4);
    }
}

TEST(TdcTransform, StrideOneIsReversal) {
  std::mt19937 rng(7);
  const DeconvKernels k(oracle::random_tensor({2, 3, 4, 4}, rng));
  const TdcKernels t = tdc_transform_kernels(k, 1);
  ASSERT_EQ(t.tensor().dims(), (Dims{3, 2, 1, 4, 4}));
  for (std::size_t o = 0; o < 3; ++o)
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = 0; b < 4; ++b)
          EXPECT_EQ(t.tensor()(o, i, 0, a, b), k.tensor()(i, o, 3 - a, 3 - b));
}

// Slice n = S (k_h % S) + k_w % S, position K_T - ceil((k + 1) / S).
TEST(TdcTransform, MatchesIndexMapAndInverts) {
  std::mt19937 rng(8);
  for (int kd : {3, 4, 5, 6}) {
    const int s = 2, kt = (kd + s - 1) / s;
    const DeconvKernels k(oracle::random_tensor({2, 2, std::size_t(kd), std::size_t(kd)}, rng));
    const Tensor t = tdc_transform_kernels(k, s).tensor();
    ASSERT_EQ(t.dims(), (Dims{2, 2, 4, std::size_t(kt), std::size_t(kt)}));
    Tensor expect(t.dims());
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t o = 0; o < 2; ++o)
        for (int a = 0; a < kd; ++a)
          for (int b = 0; b < kd; ++b) {
            const std::size_t n = s * (a % s) + b % s;
            expect(o, i, n, kt - (a + s) / s, kt - (b + s) / s) = k.tensor()(i, o, a, b);
          }
    EXPECT_TRUE(t.bitwise_equal(expect)) << "K=" << kd;
  }
}

TEST(TdcTransform, PaddedPositionsAreZero) {
  const DeconvKernels k(Tensor({1, 1, 3, 3}, std::vector<float>(9, 1.0f)));
  const Tensor t = tdc_transform_kernels(k, 2).tensor();
  ASSERT_EQ(t.size(), 16u);
  const auto zeros = std::count(t.data().begin(), t.data().end(), 0.0f);
  EXPECT_EQ(zeros, 7);
  EXPECT_DOUBLE_EQ(static_cast<double>(zeros) / t.size(), tdc_zero_fraction(3, 2));
  EXPECT_EQ(tdc_zero_fraction(6, 2), 0.0);
}

TEST(MacRatio, NearestNeighbour) {
  EXPECT_DOUBLE_EQ(mac_reduction_ratio_nn(3, UpsampleFactor(2)), 16.0 / 36.0);
  EXPECT_DOUBLE_EQ(mac_reduction_ratio_nn(3, UpsampleFactor(3)), 25.0 / 81.0);
  EXPECT_DOUBLE_EQ(mac_reduction_ratio_nn(1, UpsampleFactor(5)), 1.0);
  EXPECT_THROW(mac_reduction_ratio_nn(4, UpsampleFactor(2)), InvalidKernelError);
}

}  // namespace
}  // namespace upsample
