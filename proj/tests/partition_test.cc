/*
 * Copyright 2026 The yorex Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


#include "yorex/partition.h"

#include <gtest/gtest.h>

#include <map>

#include "yorex/raster.h"

namespace yorex {
namespace {

// Every pixel of every region box is covered by exactly one part, and no part
// leaves the region.
void ExpectTiling(std::span<const Box> region, const std::vector<Part>& parts) {
  Box frame = region[0];
  for (const Box& b : region) frame = Enclose(frame, b);
  std::map<std::pair<int, int>, int> cover;
  for (const Part& p : parts) {
    ASSERT_FALSE(p.region.empty());
    for (int y = p.region.y0; y < p.region.y1; ++y) {
      for (int x = p.region.x0; x < p.region.x1; ++x) ++cover[{x, y}];
    }
  }
  int64_t inside = 0;
  for (int y = frame.y0; y < frame.y1; ++y) {
    for (int x = frame.x0; x < frame.x1; ++x) {
      bool in_region = false;
      for (const Box& b : region) in_region = in_region || b.Contains(x, y);
      const int c = cover.count({x, y}) ? cover[{x, y}] : 0;
      EXPECT_EQ(c, in_region ? 1 : 0) << "pixel " << x << "," << y;
      inside += in_region;
    }
  }
  EXPECT_EQ(static_cast<int64_t>(cover.size()), inside);
}

TEST(SplitDistributionTest, ParseAndPrint) {
  EXPECT_EQ(SplitDistribution::Parse("uniform").kind, SplitDistribution::Kind::kUniform);
  const auto bb = SplitDistribution::Parse("betabin:2,5");
  EXPECT_EQ(bb.kind, SplitDistribution::Kind::kBetaBinomial);
  EXPECT_DOUBLE_EQ(bb.alpha, 2.0);
  EXPECT_DOUBLE_EQ(bb.beta, 5.0);
  EXPECT_EQ(SplitDistribution::Parse(bb.ToString()).ToString(), bb.ToString());
  EXPECT_THROW(SplitDistribution::Parse("gauss"), std::invalid_argument);
  EXPECT_THROW(SplitDistribution::Parse("betabin:0,1"), std::invalid_argument);
  EXPECT_THROW(SplitDistribution::Parse("betabin:1"), std::invalid_argument);
}

TEST(SplitDistributionTest, DrawsStayInterior) {
  Rng rng(3);
  for (const auto& d : {SplitDistribution::Uniform(), SplitDistribution::BetaBinomial(0.3, 0.3),
                        SplitDistribution::BetaBinomial(5, 1)}) {
    for (int i = 0; i < 2000; ++i) {
      const int lo = static_cast<int>(rng() % 20);
      const int hi = lo + 2 + static_cast<int>(rng() % 30);
      const int c = d.DrawInterior(lo, hi, rng);
      EXPECT_GT(c, lo);
      EXPECT_LT(c, hi);
    }
  }
}

TEST(SplitDistributionTest, SkewedBetaLeansRight) {
  Rng rng(5);
  const auto d = SplitDistribution::BetaBinomial(8, 1);
  double sum = 0;
  for (int i = 0; i < 1000; ++i) sum += d.DrawInterior(0, 100, rng);
  EXPECT_GT(sum / 1000, 70.0);
}

TEST(RandomPartitionTest, FourQuadrantsDeterministic) {
  Rng a(42), b(42);
  const auto p1 = RandomPartition({0, 0, 100, 100}, 4, SplitDistribution::Uniform(), a);
  const auto p2 = RandomPartition({0, 0, 100, 100}, 4, SplitDistribution::Uniform(), b);
  ASSERT_EQ(p1.size(), 4u);
  EXPECT_EQ(p1, p2);
  for (int i = 0; i < 4; ++i) EXPECT_EQ(p1[i].id, i);
  // Quadrants share one interior corner.
  EXPECT_EQ(p1[0].region.x1, p1[1].region.x0);
  EXPECT_EQ(p1[0].region.y1, p1[2].region.y0);
  EXPECT_EQ(p1[3].region.x0, p1[0].region.x1);
  EXPECT_EQ(p1[3].region.y0, p1[0].region.y1);
}

TEST(RandomPartitionTest, SinglePixelIsOnePart) {
  Rng rng(1);
  const auto p = RandomPartition({4, 4, 5, 5}, 4, SplitDistribution::Uniform(), rng);
  ASSERT_EQ(p.size(), 1u);
  EXPECT_EQ(p[0].region, (Box{4, 4, 5, 5}));
}

TEST(RandomPartitionTest, RejectsBadArguments) {
  Rng rng(1);
  EXPECT_THROW(RandomPartition({0, 0, 5, 5}, 1, {}, rng), std::invalid_argument);
  EXPECT_THROW(RandomPartition({0, 0, 0, 5}, 4, {}, rng), std::invalid_argument);
}

TEST(RandomPartitionTest, TilingProperty) {
  Rng rng(9);
  for (int trial = 0; trial < 300; ++trial) {
    const int x0 = static_cast<int>(rng() % 10), y0 = static_cast<int>(rng() % 10);
    const Box active{x0, y0, x0 + 1 + static_cast<int>(rng() % 25),
                     y0 + 1 + static_cast<int>(rng() % 25)};
    const int s = 2 + static_cast<int>(rng() % 7);
    const auto dist = trial % 2 ? SplitDistribution::Uniform()
                                : SplitDistribution::BetaBinomial(0.5, 2);
    const auto parts = RandomPartition(active, s, dist, rng, 3);
    EXPECT_EQ(static_cast<int64_t>(parts.size()), std::min<int64_t>(s, active.area()));
    for (const Part& p : parts) EXPECT_EQ(p.owner, 3);
    const Box region[] = {active};
    ExpectTiling(region, parts);
  }
}

TEST(PartitionRegionTest, TwoRectanglesStayWithinBudget) {
  Rng rng(2);
  for (int trial = 0; trial < 200; ++trial) {
    const std::vector<Box> region = {{0, 0, 1 + static_cast<int>(rng() % 20), 10},
                                     {30, 5, 31 + static_cast<int>(rng() % 20), 8}};
    const int s = 2 + static_cast<int>(rng() % 6);
    const auto parts = PartitionRegion(region, s, {}, rng);
    EXPECT_LE(static_cast<int>(parts.size()), s);
    EXPECT_GE(parts.size(), 2u);
    for (size_t i = 0; i < parts.size(); ++i) EXPECT_EQ(parts[i].id, static_cast<int>(i));
    ExpectTiling(region, parts);
  }
}

TEST(RefineTest, FourPixelQuadrantsAreDone) {
  const std::vector<Part> passing = {{{0, 0, 1, 1}, 0, 0}, {{1, 0, 2, 1}, 0, 1},
                                     {{0, 1, 1, 2}, 0, 2}, {{1, 1, 2, 2}, 0, 3}};
  EXPECT_TRUE(Refine(passing, 1).done);
}

TEST(RefineTest, SingleQuadrantBecomesRegion) {
  Rng rng(8);
  const auto parts = RandomPartition({0, 0, 100, 100}, 4, {}, rng);
  const std::vector<Part> passing = {parts[2]};
  const auto r = Refine(passing, 64);
  EXPECT_FALSE(r.done);
  ASSERT_EQ(r.next_region.size(), 1u);
  EXPECT_EQ(r.next_region[0], parts[2].region);
}

TEST(RefineTest, PairUnionMatchesBruteForce) {
  Rng rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    const Box active{0, 0, 20 + static_cast<int>(rng() % 30), 20 + static_cast<int>(rng() % 30)};
    const auto parts = RandomPartition(active, 4, {}, rng);
    const std::vector<Part> passing = {parts[0], parts[2]};
    const auto r = Refine(passing, 4);
    PixelSet got(active.x1, active.y1), expected(active.x1, active.y1);
    for (const Box& b : r.next_region) got.InsertBox(b);
    for (int y = 0; y < active.y1; ++y) {
      for (int x = 0; x < active.x1; ++x) {
        if (parts[0].region.Contains(x, y) || parts[2].region.Contains(x, y)) {
          expected.Insert(x, y);
        }
      }
    }
    EXPECT_EQ(got, expected);
    EXPECT_LE(TotalArea(r.next_region), active.area());
  }
}

TEST(DeriveSeedTest, DependsOnEveryCoordinate) {
  EXPECT_EQ(DeriveSeed(1, {2, 3}), DeriveSeed(1, {2, 3}));
  EXPECT_NE(DeriveSeed(1, {2, 3}), DeriveSeed(1, {3, 2}));
  EXPECT_NE(DeriveSeed(1, {2, 3}), DeriveSeed(2, {2, 3}));
  EXPECT_NE(DeriveSeed(1, {2}), DeriveSeed(1, {2, 0}));
}

}  // namespace
}  // namespace yorex
