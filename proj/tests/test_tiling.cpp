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

#include "upsample/error.hpp"
#include "upsample/tiling.hpp"

namespace upsample {
namespace {

TEST(TileLegality, StrideDivisibility) {
  const TileLegality seven = tile_legality(2, 7);
  EXPECT_TRUE(seven.revd2);
  EXPECT_FALSE(seven.revd);
  EXPECT_FALSE(seven.tdc);
  EXPECT_TRUE(seven.strd_as_conv);
  for (std::uint64_t t = 1; t <= 12; ++t) {
    const TileLegality l = tile_legality(1, t);
    EXPECT_TRUE(l.revd2 && l.revd && l.tdc && l.strd_as_conv);
  }
  const TileLegality nine = tile_legality(3, 9);
  EXPECT_TRUE(nine.revd2 && nine.revd && nine.tdc && nine.strd_as_conv);
}

TEST(Analyze, SevenBySevenOnSixteenLanes) {
  const TilingReport r = analyze({16, 28, 2, 7});
  EXPECT_EQ(r.workloads, 16u);
  EXPECT_EQ(r.passes, 1u);
  EXPECT_EQ(r.utilization, 1.0);
  EXPECT_EQ(r.overhead, 1.0);
}

TEST(Analyze, EightByEightMovesThirtyPercentMore) {
  const TilingReport r = analyze({16, 28, 2, 8}, TiledAlgorithm::kTdc);
  EXPECT_EQ(r.workloads, 16u);
  EXPECT_EQ(r.utilization, 1.0);
  EXPECT_DOUBLE_EQ(r.overhead, 1024.0 / 784.0);
  EXPECT_NEAR(r.overhead, 1.30612, 1e-5);
}

TEST(Analyze, SixBySixNeedsTwoPasses) {
  const TilingReport r = analyze({16, 28, 2, 6}, TiledAlgorithm::kRevd);
  EXPECT_EQ(r.workloads, 25u);
  EXPECT_EQ(r.passes, 2u);
  EXPECT_EQ(r.utilization, 25.0 / 32.0);
  EXPECT_DOUBLE_EQ(r.overhead, 900.0 / 784.0);
}

TEST(Analyze, IllegalTileThrows) {
  EXPECT_THROW(analyze({16, 28, 2, 7}, TiledAlgorithm::kRevd), LegalityError);
  EXPECT_THROW(analyze({16, 28, 2, 7}, TiledAlgorithm::kTdc), LegalityError);
  EXPECT_NO_THROW(analyze({16, 28, 2, 7}, TiledAlgorithm::kStrdAsConv));
  EXPECT_THROW(analyze({16, 28, 2, 29}), DomainError);
  EXPECT_THROW(analyze({0, 28, 2, 7}), DomainError);
}

TEST(Analyze, UtilizationAndOverheadIdentities) {
  for (std::uint64_t lanes = 1; lanes <= 20; ++lanes)
    for (std::uint64_t out = 1; out <= 30; ++out)
      for (std::uint64_t tile = 1; tile <= out; ++tile) {
        const TilingReport r = analyze({lanes, out, 1, tile});
        EXPECT_EQ(r.utilization == 1.0, r.workloads % lanes == 0);
        EXPECT_EQ(r.overhead == 1.0, out % tile == 0);
        EXPECT_GT(r.utilization, 0.0);
        EXPECT_GE(r.overhead, 1.0);
      }
}

TEST(TilingFormat, TextAndCsv) {
  const TilingReport r = analyze({16, 28, 2, 6});
  const std::string text = format_tiling_text(r);
  EXPECT_NE(text.find("utilization: 0.78125"), std::string::npos);
  EXPECT_EQ(format_tiling_csv_row(r), "revd2,16,28,2,6,25,2,0.78125,1.1479591836734695,1,1,1,1");
  EXPECT_EQ(parse_tiled_algorithm("tdc"), TiledAlgorithm::kTdc);
  EXPECT_THROW(parse_tiled_algorithm("fft"), DomainError);
}

}  // namespace
}  // namespace upsample
