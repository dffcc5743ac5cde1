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
#include <random>

#include "oracles.hpp"
#include "upsample/costmodel.hpp"
#include "upsample/deconv.hpp"
#include "upsample/error.hpp"
#include "upsample/transforms.hpp"

namespace upsample {
namespace {

Tensor ones(const Dims& d) {
  Tensor t(d);
  for (float& v : t.data()) v = 1.0f;
  return t;
}

std::vector<float> values(const Tensor& t) { return {t.data().begin(), t.data().end()}; }

Tensor run(int variant, const Tensor& x, const DeconvKernels& k, const DeconvParams& p) {
  switch (variant) {
    case 0: return deconv_standard(x, k, p);
    case 1: return deconv_revd(x, k, p);
    case 2: return deconv_revd2(x, k, p);
    case 3: return deconv_revd2(x, k, p, Revd2Indexing::kCounter);
    case 4: return deconv_strd(x, k, p);
    default: return deconv_tdc(x, tdc_transform_kernels(k, p.stride), p);
  }
}
constexpr int kVariants = 6;

// 2x2 ones through a 4x4 ones kernel at S=2, P=1. Row coverage of the
// uncropped 6x6 result is {1,1,2,2,1,1}; cropping one pixel per side leaves
// {1,2,2,1}, and the output is its outer product.
TEST(Deconv, FourByFourOutputHandUnrolled) {
  const std::vector<float> expect = {1, 2, 2, 1, 2, 4, 4, 2, 2, 4, 4, 2, 1, 2, 2, 1};
  const DeconvKernels k(ones({1, 1, 4, 4}));
  for (int v = 0; v < kVariants; ++v) {
    const Tensor y = run(v, ones({1, 2, 2}), k, {4, 2, 1});
    ASSERT_EQ(y.dims(), (Dims{1, 4, 4})) << "variant " << v;
    EXPECT_EQ(values(y), expect) << "variant " << v;
  }
}

TEST(Deconv, UnitGeometryScales) {
  std::mt19937 rng(1);
  const Tensor x = oracle::random_tensor({1, 3, 4}, rng);
  const DeconvKernels k(Tensor({1, 1, 1, 1}, {2.5f}));
  for (int v = 0; v < kVariants; ++v) {
    const Tensor y = run(v, x, k, {1, 1, 0});
    for (std::size_t i = 0; i < x.size(); ++i) EXPECT_EQ(y[i], 2.5f * x[i]);
  }
}

TEST(Deconv, StandardMatchesGatherOracle) {
  std::mt19937 rng(2);
  const Tensor x = oracle::random_tensor({3, 5, 5}, rng);
  const Tensor w = oracle::random_tensor({3, 2, 4, 4}, rng);
  const Tensor y = deconv_standard(x, DeconvKernels(w), {4, 2, 1});
  ASSERT_EQ(y.dims(), (Dims{2, 10, 10}));
  EXPECT_LE(max_abs_diff(y, oracle::deconv(x, w, 2, 1)), 1e-5);
}

TEST(Deconv, AllVariantsAgreeOnRandomDraws) {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> ch(1, 4), ext(1, 16), ks(2, 6), st(1, 3), pd(0, 2);
  int checked = 0;
  while (checked < 60) {
    const DeconvParams p{ks(rng), st(rng), pd(rng)};
    const int h = ext(rng), w = ext(rng);
    if (p.output_extent(h) < 1 || p.output_extent(w) < 1) continue;
    const Tensor x = oracle::random_tensor({std::size_t(ch(rng)), std::size_t(h), std::size_t(w)}, rng);
    const DeconvKernels k(oracle::random_tensor(
        {x.extent(0), std::size_t(ch(rng)), std::size_t(p.kernel), std::size_t(p.kernel)}, rng));
    const Tensor ref = oracle::deconv(x, k.tensor(), p.stride, p.padding);
    for (int v = 0; v < kVariants; ++v) {
      const Tensor y = run(v, x, k, p);
      ASSERT_EQ(y.dims(), ref.dims());
      EXPECT_LE(max_abs_diff(y, ref), 1e-4)
          << "variant " << v << " K=" << p.kernel << " S=" << p.stride << " P=" << p.padding;
    }
    ++checked;
  }
}

TEST(Deconv, KernelSmallerThanStride) {
  std::mt19937 rng(4);
  const Tensor x = oracle::random_tensor({2, 4, 3}, rng);
  const DeconvKernels k(oracle::random_tensor({2, 3, 2, 2}, rng));
  const DeconvParams p{2, 3, 0};
  const Tensor ref = deconv_standard(x, k, p);
  for (int v = 1; v < kVariants; ++v) EXPECT_LE(max_abs_diff(run(v, x, k, p), ref), 1e-5);
  // Rows 2, 5, 8 receive no tap.
  for (std::size_t c = 0; c < ref.extent(0); ++c)
    for (std::size_t w = 0; w < ref.extent(2); ++w) EXPECT_EQ(ref(c, 2, w), 0.0f);
}

TEST(Deconv, PaddingBeyondStride) {
  std::mt19937 rng(5);
  const Tensor x = oracle::random_tensor({1, 6, 6}, rng);
  const DeconvKernels k(oracle::random_tensor({1, 2, 6, 6}, rng));
  const DeconvParams p{6, 2, 4};
  const Tensor ref = oracle::deconv(x, k.tensor(), 2, 4);
  for (int v = 0; v < kVariants; ++v) EXPECT_LE(max_abs_diff(run(v, x, k, p), ref), 1e-5) << v;
}

TEST(Deconv, GeometryErrors) {
  const DeconvKernels k(Tensor({1, 1, 2, 2}));
  EXPECT_THROW(deconv_standard(Tensor({1, 1, 1}), k, {2, 1, 1}), GeometryError);
  EXPECT_THROW(deconv_standard(Tensor({2, 3, 3}), k, {2, 1, 0}), ShapeError);
  EXPECT_THROW(deconv_revd2(Tensor({1, 3, 3}), k, {3, 1, 0}), ShapeError);
}

TEST(Strd, ZeroInsertedMapLayout) {
  const Tensor x({1, 2, 2}, {1, 2, 3, 4});
  const Tensor z = zero_insert(x, 2);
  ASSERT_EQ(z.dims(), (Dims{1, 3, 3}));
  EXPECT_EQ(values(z), (std::vector<float>{1, 0, 2, 0, 0, 0, 3, 0, 4}));
  EXPECT_TRUE(zero_insert(x, 1).bitwise_equal(x));
}

TEST(Strd, FourByFourKernelUsesConvPaddingTwo) {
  Tensor inter;
  deconv_strd(ones({1, 2, 2}), DeconvKernels(ones({1, 1, 4, 4})), {4, 2, 1}, nullptr, &inter);
  EXPECT_EQ(inter.dims(), (Dims{1, 3, 3}));
}

TEST(Strd, ZeroCountMatchesFormula) {
  std::mt19937 rng(6);
  Tensor x = oracle::random_tensor({1, 20, 20}, rng);
  for (float& v : x.data()) v = v == 0.0f ? 0.5f : v;
  Tensor inter;
  deconv_strd(x, DeconvKernels(ones({1, 1, 3, 3})), {3, 3, 1}, nullptr, &inter);
  const auto zeros = std::count(inter.data().begin(), inter.data().end(), 0.0f);
  EXPECT_EQ(zeros, 58 * 58 - 20 * 20);
  EXPECT_DOUBLE_EQ(static_cast<double>(zeros) / inter.size(), strd_zero_fraction(20, 3));
}

TEST(Revd2, SixteenSevenBySevenTilesMatchMonolithic) {
  std::mt19937 rng(7);
  const Tensor x = oracle::random_tensor({2, 14, 14}, rng);
  const DeconvKernels k(oracle::random_tensor({2, 3, 4, 4}, rng));
  const DeconvParams p{4, 2, 1};
  const Tensor mono = deconv_revd2(x, k, p);
  ASSERT_EQ(mono.dims(), (Dims{3, 28, 28}));
  const auto tiles = make_tiles(28, 28, 7, 7);
  ASSERT_EQ(tiles.size(), 16u);
  EXPECT_TRUE(deconv_revd2_tiled(x, k, p, tiles, 4).bitwise_equal(mono));
}

TEST(Revd2, CounterMatchesModuloBitwise) {
  std::mt19937 rng(8);
  for (int t = 0; t < 20; ++t) {
    const int s = 1 + t % 3, kd = 2 + t % 5, pad = t % 3;
    const Tensor x = oracle::random_tensor({2, 5, 6}, rng);
    const DeconvKernels k(oracle::random_tensor({2, 2, std::size_t(kd), std::size_t(kd)}, rng));
    const DeconvParams p{kd, s, pad};
    if (p.output_extent(5) < 1) continue;
    EXPECT_TRUE(deconv_revd2(x, k, p, Revd2Indexing::kModulo)
                    .bitwise_equal(deconv_revd2(x, k, p, Revd2Indexing::kCounter)));
  }
}

TEST(Revd2, RandomTilingsInShuffledOrder) {
  std::mt19937 rng(9);
  for (int t = 0; t < 10; ++t) {
    const Tensor x = oracle::random_tensor({2, 7, 9}, rng);
    const DeconvKernels k(oracle::random_tensor({2, 2, 5, 5}, rng));
    const DeconvParams p{5, 3, 2};
    const Tensor mono = deconv_revd2(x, k, p);
    auto tiles = make_tiles(mono.extent(1), mono.extent(2), 1 + rng() % 9, 1 + rng() % 9);
    std::shuffle(tiles.begin(), tiles.end(), rng);
    EXPECT_TRUE(deconv_revd2_tiled(x, k, p, tiles, 1 + t % 3).bitwise_equal(mono));
  }
}

TEST(Revd, TileMustBeStrideAligned) {
  const Tensor x = ones({1, 14, 14});
  const DeconvKernels k(ones({1, 1, 4, 4}));
  const DeconvParams p{4, 2, 1};
  Tensor out(deconv_output_dims(x, k, p));
  EXPECT_THROW(deconv_revd_tile(x, k, p, {0, 0, 7, 7}, out), LegalityError);
  EXPECT_THROW(deconv_tdc_tile(x, tdc_transform_kernels(k, 2), p, {7, 0, 7, 8}, out),
               LegalityError);
  for (const OutputTile& t : make_tiles(28, 28, 8, 8)) deconv_revd_tile(x, k, p, t, out);
  EXPECT_TRUE(out.bitwise_equal(deconv_revd(x, k, p)));
  Tensor out2(out.dims());
  const TdcKernels tk = tdc_transform_kernels(k, 2);
  for (const OutputTile& t : make_tiles(28, 28, 4, 6)) deconv_tdc_tile(x, tk, p, t, out2);
  EXPECT_TRUE(out2.bitwise_equal(deconv_tdc(x, tk, p)));
}

TEST(Tdc, RejectsWrongSliceCount) {
  EXPECT_THROW(TdcKernels(Tensor({1, 1, 3, 2, 2}), 2, 4), ShapeError);
}

TEST(MakeTiles, ClipsEdges) {
  const auto tiles = make_tiles(10, 7, 4, 4);
  ASSERT_EQ(tiles.size(), 6u);
  EXPECT_EQ(tiles.back(), (OutputTile{8, 4, 2, 3}));
}

}  // namespace
}  // namespace upsample
