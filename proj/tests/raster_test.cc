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


#include "yorex/raster.h"

#include <gtest/gtest.h>

#include <random>

namespace yorex {
namespace {

Raster Noise(int w, int h, uint64_t seed) {
  std::mt19937_64 rng(seed);
  Raster r(w, h);
  for (auto& b : r.mutable_data()) b = static_cast<uint8_t>(rng());
  return r;
}

PixelSet RandomSet(int w, int h, std::mt19937_64& rng) {
  PixelSet s(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (rng() & 1) s.Insert(x, y);
    }
  }
  return s;
}

TEST(BoxTest, Geometry) {
  const Box b{2, 3, 7, 5};
  EXPECT_EQ(b.width(), 5);
  EXPECT_EQ(b.height(), 2);
  EXPECT_EQ(b.area(), 10);
  EXPECT_TRUE(b.Contains(2, 3));
  EXPECT_FALSE(b.Contains(7, 3));
  EXPECT_TRUE((Box{4, 3, 4, 9}).empty());
  EXPECT_EQ((Box{4, 3, 4, 9}).area(), 0);
  EXPECT_TRUE(b.FitsIn(7, 5));
  EXPECT_FALSE(b.FitsIn(6, 5));
}

TEST(BoxTest, IntersectAndEnclose) {
  EXPECT_EQ(Intersect({0, 0, 10, 10}, {5, 5, 20, 20}), (Box{5, 5, 10, 10}));
  EXPECT_FALSE(Intersect({0, 0, 5, 5}, {5, 0, 10, 5}).has_value());
  EXPECT_EQ(Enclose({0, 0, 2, 2}, {5, 1, 6, 9}), (Box{0, 0, 6, 9}));
}

TEST(IouTest, Examples) {
  EXPECT_DOUBLE_EQ(Iou({3, 4, 9, 12}, {3, 4, 9, 12}), 1.0);
  EXPECT_DOUBLE_EQ(Iou({0, 0, 5, 5}, {6, 6, 9, 9}), 0.0);
  // 50 px shared, 150 px covered.
  EXPECT_DOUBLE_EQ(Iou({0, 0, 10, 10}, {5, 0, 15, 10}), 50.0 / 150.0);
}

TEST(IouTest, SymmetricAndBounded) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> c(0, 30);
  for (int i = 0; i < 2000; ++i) {
    int ax = c(rng), ay = c(rng), bx = c(rng), by = c(rng);
    const Box a{ax, ay, ax + 1 + c(rng), ay + 1 + c(rng)};
    const Box b{bx, by, bx + 1 + c(rng), by + 1 + c(rng)};
    const double ab = Iou(a, b);
    EXPECT_DOUBLE_EQ(ab, Iou(b, a));
    EXPECT_GE(ab, 0.0);
    EXPECT_LE(ab, 1.0);
    EXPECT_DOUBLE_EQ(Iou(a, a), 1.0);
  }
}

TEST(EnclosingBoxTest, RoundsOutward) {
  EXPECT_EQ(EnclosingBox(1.2, 2.0, 3.01, 4.9), (Box{1, 2, 4, 5}));
  EXPECT_EQ(EnclosingBox(0, 0, 3, 3), (Box{0, 0, 3, 3}));
}

TEST(RasterTest, RejectsBadSizes) {
  EXPECT_THROW(Raster(0, 3), std::invalid_argument);
  EXPECT_THROW(Raster::FromBytes(2, 2, std::vector<uint8_t>(11)), std::invalid_argument);
  EXPECT_NO_THROW(Raster::FromBytes(2, 2, std::vector<uint8_t>(12)));
}

TEST(RasterTest, FillAndCrop) {
  Raster r(6, 4, {1, 2, 3});
  r.Fill({1, 1, 3, 3}, {9, 9, 9});
  EXPECT_EQ(r.at(0, 0), (Rgb{1, 2, 3}));
  EXPECT_EQ(r.at(2, 2), (Rgb{9, 9, 9}));
  const Raster c = r.Crop({1, 1, 4, 3});
  EXPECT_EQ(c.width(), 3);
  EXPECT_EQ(c.height(), 2);
  EXPECT_EQ(c.at(0, 0), (Rgb{9, 9, 9}));
  EXPECT_EQ(c.at(2, 1), (Rgb{1, 2, 3}));
  EXPECT_THROW(r.Crop({4, 0, 7, 2}), std::invalid_argument);
}

TEST(ApplyMaskTest, KeepEverythingIsIdentity) {
  const Raster img = Noise(9, 7, 1);
  EXPECT_EQ(ApplyMask(img, PixelSet::Full(9, 7), {5, 5, 5}), img);
}

TEST(ApplyMaskTest, KeepNothingIsUniform) {
  const Raster img = Noise(9, 7, 2);
  EXPECT_EQ(ApplyMask(img, PixelSet(9, 7), {5, 6, 7}), Raster(9, 7, {5, 6, 7}));
}

TEST(ApplyMaskTest, LeftHalf) {
  const Raster img = Noise(4, 4, 3);
  const Raster out = ApplyMask(img, PixelSet::FromBox(4, 4, {0, 0, 2, 4}), kBlack);
  for (int y = 0; y < 4; ++y) {
    for (int x = 0; x < 4; ++x) {
      EXPECT_EQ(out.at(x, y), x < 2 ? img.at(x, y) : kBlack);
    }
  }
}

TEST(ApplyMaskTest, Idempotent) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 20; ++i) {
    const Raster img = Noise(13, 11, i);
    const PixelSet keep = RandomSet(13, 11, rng);
    const Raster once = ApplyMask(img, keep, {200, 0, 100});
    EXPECT_EQ(ApplyMask(once, keep, {200, 0, 100}), once);
  }
}

TEST(ApplyMaskTest, FrameMismatchThrows) {
  EXPECT_THROW(ApplyMask(Raster(4, 4), PixelSet(4, 5), kBlack), std::invalid_argument);
}

TEST(PixelSetTest, Basics) {
  PixelSet s(70, 3);  // spans word boundaries
  EXPECT_TRUE(s.Empty());
  EXPECT_FALSE(s.BoundingBox().has_value());
  s.Insert(65, 1);
  s.Insert(3, 2);
  EXPECT_EQ(s.Count(), 2);
  EXPECT_EQ(s.BoundingBox(), (Box{3, 1, 66, 3}));
  s.Erase(65, 1);
  EXPECT_EQ(s.Count(), 1);
  EXPECT_EQ(PixelSet::Full(70, 3).Count(), 210);
  EXPECT_EQ(PixelSet(70, 3).Complement(), PixelSet::Full(70, 3));
}

TEST(PixelSetTest, InsertBoxClipsToFrame) {
  PixelSet s(10, 10);
  s.InsertBox({-5, 8, 3, 20});
  EXPECT_EQ(s.Count(), 6);
  EXPECT_EQ(s.BoundingBox(), (Box{0, 8, 3, 10}));
}

TEST(PixelSetTest, LatticeLaws) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    const int w = 1 + static_cast<int>(rng() % 40), h = 1 + static_cast<int>(rng() % 9);
    const PixelSet a = RandomSet(w, h, rng), b = RandomSet(w, h, rng),
                   c = RandomSet(w, h, rng);
    EXPECT_EQ(a | b, b | a);
    EXPECT_EQ(a & b, b & a);
    EXPECT_EQ((a | b) | c, a | (b | c));
    EXPECT_EQ((a & b) & c, a & (b & c));
    EXPECT_EQ(a | (a & b), a);
    EXPECT_EQ(a & (a | b), a);
    EXPECT_EQ(a | a, a);
    EXPECT_EQ(a & (b | c), (a & b) | (a & c));
    EXPECT_EQ((a | b).Complement(), a.Complement() & b.Complement());
    EXPECT_TRUE((a & b).IsSubsetOf(a));
    EXPECT_TRUE(a.IsSubsetOf(a | b));
    EXPECT_EQ(a.Complement().Complement(), a);
    EXPECT_EQ((a | b).Count() + (a & b).Count(), a.Count() + b.Count());
  }
}

TEST(PixelSetTest, MismatchedFramesThrow) {
  PixelSet a(4, 4), b(4, 3);
  EXPECT_THROW(a |= b, std::invalid_argument);
}

}  // namespace
}  // namespace yorex
