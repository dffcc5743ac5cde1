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
#include "upsample/error.hpp"
#include "upsample/ops.hpp"

namespace upsample {
namespace {

Tensor ones(const Dims& d) {
  Tensor t(d);
  for (float& v : t.data()) v = 1.0f;
  return t;
}

TEST(Conv2d, PaddedOnesSeeFourTaps) {
  const Tensor y = conv2d(ones({1, 2, 2}), ones({1, 1, 3, 3}), {3, 1, 1});
  ASSERT_EQ(y.dims(), (Dims{1, 2, 2}));
  for (float v : y.data()) EXPECT_EQ(v, 4.0f);
}

TEST(Conv2d, IdentityKernel) {
  std::mt19937 rng(3);
  const Tensor x = oracle::random_tensor({2, 5, 6}, rng);
  Tensor k({2, 2, 1, 1});
  k(0, 0, 0, 0) = 1;
  k(1, 1, 0, 0) = 1;
  EXPECT_TRUE(conv2d(x, k, {1, 1, 0}).bitwise_equal(x));
}

TEST(Conv2d, MatchesReferenceDotProducts) {
  std::mt19937 rng(11);
  const Tensor x = oracle::random_tensor({3, 8, 8}, rng);
  const Tensor k = oracle::random_tensor({12, 3, 3, 3}, rng);
  EXPECT_LE(max_abs_diff(conv2d(x, k, {3, 1, 1}), oracle::conv2d(x, k, 1, 1)), 1e-5);
}

TEST(Conv2d, StridedShapeLaw) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const int k = std::uniform_int_distribution<int>(1, 5)(rng);
    const int s = std::uniform_int_distribution<int>(1, 3)(rng);
    const int p = std::uniform_int_distribution<int>(0, 2)(rng);
    int h = std::uniform_int_distribution<int>(k, 12)(rng);
    while ((h - k + 2 * p) % s != 0) ++h;
    const Tensor x = oracle::random_tensor({2, std::size_t(h), std::size_t(h)}, rng);
    const Tensor w = oracle::random_tensor({3, 2, std::size_t(k), std::size_t(k)}, rng);
    const Tensor y = conv2d(x, w, {k, s, p});
    EXPECT_EQ(y.extent(1), std::size_t((h - k + 2 * p) / s + 1));
    EXPECT_LE(max_abs_diff(y, oracle::conv2d(x, w, s, p)), 1e-5);
  }
}

TEST(Conv2d, Errors) {
  EXPECT_THROW(conv2d(Tensor({2, 4, 4}), Tensor({1, 3, 3, 3}), {3, 1, 1}), ShapeError);
  EXPECT_THROW(conv2d(Tensor({1, 4, 4}), Tensor({1, 1, 3, 3}), {3, 2, 0}), GeometryError);
  EXPECT_THROW(conv2d(Tensor({1, 2, 2}), Tensor({1, 1, 5, 5}), {5, 1, 0}), GeometryError);
}

TEST(Conv2d, CountsEveryTap) {
  MacCounter c;
  conv2d(Tensor({2, 4, 4}), Tensor({3, 2, 3, 3}), {3, 1, 1}, &c);
  EXPECT_EQ(c.macs, 3u * 16 * 2 * 9);
}

TEST(PixelShuffle, IdentityAtR1) {
  std::mt19937 rng(2);
  const Tensor x = oracle::random_tensor({3, 4, 5}, rng);
  EXPECT_TRUE(pixel_shuffle(x, UpsampleFactor(1)).bitwise_equal(x));
}

TEST(PixelShuffle, FourChannelsIntoTwoByTwo) {
  const Tensor y = pixel_shuffle(Tensor({4, 1, 1}, {1, 2, 3, 4}), UpsampleFactor(2));
  ASSERT_EQ(y.dims(), (Dims{1, 2, 2}));
  EXPECT_EQ(std::vector<float>(y.data().begin(), y.data().end()), (std::vector<float>{1, 2, 3, 4}));
}

TEST(PixelShuffle, MatchesIndexMapAndPreservesValues) {
  std::mt19937 rng(9);
  const Tensor x = oracle::random_tensor({8, 2, 2}, rng);
  const Tensor y = pixel_shuffle(x, UpsampleFactor(2));
  EXPECT_TRUE(y.bitwise_equal(oracle::pixel_shuffle(x, 2)));
  std::vector<float> a(x.data().begin(), x.data().end()), b(y.data().begin(), y.data().end());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  EXPECT_EQ(a, b);
}

TEST(PixelShuffle, RejectsIndivisibleChannels) {
  EXPECT_THROW(pixel_shuffle(Tensor({6, 2, 2}), UpsampleFactor(2)), ShapeError);
}

TEST(NnInterpolate, ReplicatesBlocks) {
  const Tensor y = nn_interpolate(Tensor({1, 2, 2}, {1, 2, 3, 4}), UpsampleFactor(2));
  const std::vector<float> expect = {1, 1, 2, 2, 1, 1, 2, 2, 3, 3, 4, 4, 3, 3, 4, 4};
  EXPECT_EQ(std::vector<float>(y.data().begin(), y.data().end()), expect);
}

TEST(NnInterpolate, MatchesIndexMap) {
  std::mt19937 rng(4);
  const Tensor x = oracle::random_tensor({3, 5, 7}, rng);
  const Tensor y = nn_interpolate(x, UpsampleFactor(3));
  ASSERT_EQ(y.dims(), (Dims{3, 15, 21}));
  EXPECT_TRUE(y.bitwise_equal(oracle::nn_interpolate(x, 3)));
  EXPECT_TRUE(nn_interpolate(x, UpsampleFactor(1)).bitwise_equal(x));
}

TEST(UpsampleFactor, RejectsZero) { EXPECT_THROW(UpsampleFactor(0), GeometryError); }

TEST(SubpixelConv, IsConvThenShuffle) {
  std::mt19937 rng(6);
  const Tensor x = oracle::random_tensor({3, 8, 8}, rng);
  const Tensor k = oracle::random_tensor({12, 3, 3, 3}, rng);
  const Tensor y = subpixel_conv(x, k, {3, 1, 1}, UpsampleFactor(2));
  ASSERT_EQ(y.dims(), (Dims{3, 16, 16}));
  EXPECT_LE(max_abs_diff(y, oracle::pixel_shuffle(oracle::conv2d(x, k, 1, 1), 2)), 1e-5);

  const Tensor k1 = oracle::random_tensor({2, 3, 3, 3}, rng);
  EXPECT_TRUE(subpixel_conv(x, k1, {3, 1, 1}, UpsampleFactor(1))
                  .bitwise_equal(conv2d(x, k1, {3, 1, 1})));
}

TEST(SubpixelConv, RequiresSamePadding) {
  EXPECT_THROW(subpixel_conv(Tensor({1, 4, 4}), Tensor({4, 1, 3, 3}), {3, 1, 0}, UpsampleFactor(2)),
               GeometryError);
}

TEST(ResizeConv, IsInterpolateThenConv) {
  std::mt19937 rng(8);
  const Tensor x = oracle::random_tensor({3, 8, 8}, rng);
  const Tensor k = oracle::random_tensor({3, 3, 3, 3}, rng);
  const Tensor y = resize_conv(x, k, {3, 1, 1}, UpsampleFactor(2));
  ASSERT_EQ(y.dims(), (Dims{3, 16, 16}));
  EXPECT_LE(max_abs_diff(y, oracle::conv2d(oracle::nn_interpolate(x, 2), k, 1, 1)), 1e-5);
}

}  // namespace
}  // namespace upsample
