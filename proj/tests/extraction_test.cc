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


#include "yorex/extraction.h"

#include <gtest/gtest.h>

#include "yorex/synthetic_detector.h"

namespace yorex {
namespace {

constexpr Rgb kRed{230, 25, 75};
constexpr Rgb kBlue{0, 130, 200};
constexpr Rgb kGray{40, 40, 40};

struct FailingDetector : Detector {
  std::vector<Detections> DetectBatch(std::span<const Raster>) override {
    throw TransportError("pipe closed");
  }
};

// Records every batch and forwards.
struct Recorder : Detector {
  explicit Recorder(Detector& d) : inner(d) {}
  std::vector<Detections> DetectBatch(std::span<const Raster> images) override {
    for (const auto& i : images) seen.push_back(i);
    batches.push_back(images.size());
    return inner.DetectBatch(images);
  }
  Detector& inner;
  std::vector<Raster> seen;
  std::vector<size_t> batches;
};

Raster RedBlob() {
  Raster img(40, 40, kGray);
  img.Fill({10, 10, 30, 30}, kRed);
  return img;
}

TEST(ExtractTest, FlatLayerGivesFullBoxInOneQuery) {
  const Raster img = RedBlob();
  SyntheticBlobDetector det(img, {{"red", kRed, 0.25}});
  const Detections dets = det.DetectOne(img);
  const Layers layers = MakeLayers(dets, 40, 40);
  const auto ex = Extract(layers, dets, det, img, {});
  ASSERT_EQ(ex.size(), 1u);
  EXPECT_EQ(ex[0].pixels, PixelSet::FromBox(40, 40, dets[0].box));
  EXPECT_TRUE(ex[0].sufficient);
  EXPECT_EQ(ex[0].queries_spent, 1);
  EXPECT_DOUBLE_EQ(ex[0].level_used, 0.0);
}

TEST(ExtractTest, SufficientHotPartCostsOneQuery) {
  const Raster img = RedBlob();
  SyntheticBlobDetector det(img, {{"red", kRed, 0.25}});
  const Detections dets = det.DetectOne(img);
  Layers layers = MakeLayers(dets, 40, 40);
  const Box hot{10, 10, 30, 20};  // upper half: 50% visible, IoU 0.5
  layers[0].Add(hot, 1.0);
  const auto ex = Extract(layers, dets, det, img, {});
  EXPECT_EQ(ex[0].pixels, PixelSet::FromBox(40, 40, hot));
  EXPECT_TRUE(ex[0].sufficient);
  EXPECT_EQ(ex[0].queries_spent, 1);
  EXPECT_DOUBLE_EQ(ex[0].level_used, 1.0);
}

TEST(ExtractTest, InsufficientTopLevelFallsThroughToNextLevel) {
  const Raster img = RedBlob();
  SyntheticBlobDetector det(img, {{"red", kRed, 0.25}});
  const Detections dets = det.DetectOne(img);
  Layers layers = MakeLayers(dets, 40, 40);
  layers[0].Add({10, 10, 12, 12}, 2.0);  // 1% alone
  layers[0].Add({10, 10, 30, 22}, 1.0);
  Recorder rec(det);
  const auto ex = Extract(layers, dets, rec, img, {});
  EXPECT_EQ(ex[0].queries_spent, 2);
  EXPECT_EQ(ex[0].pixels, PixelSet::FromBox(40, 40, {10, 10, 30, 22}));
  // Reveals only grow from one step to the next.
  ASSERT_EQ(rec.seen.size(), 2u);
  for (int y = 0; y < 40; ++y) {
    for (int x = 0; x < 40; ++x) {
      if (rec.seen[0].at(x, y) != kBlack) EXPECT_EQ(rec.seen[1].at(x, y), rec.seen[0].at(x, y));
    }
  }
}

TEST(ExtractTest, LayersAreIndependentAndStepsAreBatched) {
  Raster img(60, 30, kGray);
  img.Fill({0, 0, 30, 30}, kRed);
  img.Fill({20, 10, 60, 20}, kBlue);  // bites into the red box
  SyntheticBlobDetector det(img, {{"red", kRed, 0.25}, {"blue", kBlue, 0.25}});
  const Detections dets = det.DetectOne(img);
  ASSERT_EQ(dets.size(), 2u);
  const int red = dets[0].label == "red" ? 0 : 1;
  const int blue = 1 - red;
  Layers layers = MakeLayers(dets, 60, 30);
  ASSERT_TRUE(Intersect(dets[red].box, dets[blue].box).has_value());
  layers[red].Add({0, 0, 30, 15}, 1.0);
  layers[blue].Add({20, 10, 45, 20}, 1.0);
  Recorder rec(det);
  const auto first = Extract(layers, dets, rec, img, {});
  EXPECT_EQ(rec.batches, std::vector<size_t>{2});

  Layers perturbed = layers;
  perturbed[blue].Add({20, 10, 30, 20}, 7.0);
  perturbed[blue].Add({50, 10, 60, 12}, 0.125);
  const auto second = Extract(perturbed, dets, det, img, {});
  EXPECT_TRUE(first[red].sufficient);
  EXPECT_EQ(first[red].pixels, PixelSet::FromBox(60, 30, {0, 0, 30, 15}));
  EXPECT_EQ(second[red].pixels, first[red].pixels);
  EXPECT_EQ(second[red].queries_spent, first[red].queries_spent);
}

TEST(ExtractTest, ExplanationsStayInsideTheirBox) {
  const Raster img = RedBlob();
  SyntheticBlobDetector det(img, {{"red", kRed, 0.25}});
  const Detections dets = det.DetectOne(img);
  Layers layers = MakeLayers(dets, 40, 40);
  layers[0].Add({0, 0, 40, 40}, 1.0);  // clipped to the box on add
  const auto ex = Extract(layers, dets, det, img, {});
  EXPECT_TRUE(ex[0].pixels.IsSubsetOf(PixelSet::FromBox(40, 40, dets[0].box)));
}

TEST(ExtractTest, DetectorFailureDegradesToFullBox) {
  const Raster img = RedBlob();
  const Detections dets = {{"red", 1, {10, 10, 30, 30}}};
  Layers layers = MakeLayers(dets, 40, 40);
  layers[0].Add({10, 10, 20, 20}, 1.0);
  FailingDetector bad;
  const auto ex = Extract(layers, dets, bad, img, {});
  EXPECT_FALSE(ex[0].sufficient);
  EXPECT_EQ(ex[0].error, "pipe closed");
  EXPECT_EQ(ex[0].pixels, PixelSet::FromBox(40, 40, dets[0].box));
}

TEST(ExtractTest, VanishedLabelIsReportedInsufficient) {
  const Raster img = RedBlob();
  SyntheticBlobDetector det(img, {{"red", kRed, 0.25}});
  const Detections dets = {{"green", 1, {10, 10, 30, 30}}};
  const auto ex = Extract(MakeLayers(dets, 40, 40), dets, det, img, {});
  EXPECT_FALSE(ex[0].sufficient);
  EXPECT_TRUE(ex[0].error.empty());
  EXPECT_EQ(ex[0].pixels.Count(), 400);
}

TEST(RevealAtLevelTest, ThresholdIsInclusive) {
  ResponsibilityLayer layer(0, {0, 0, 4, 4}, 4, 4);
  layer.Add({0, 0, 2, 2}, 1.0);
  layer.Add({0, 0, 1, 1}, 1.0);
  EXPECT_EQ(RevealAtLevel(layer, 2.0).Count(), 1);
  EXPECT_EQ(RevealAtLevel(layer, 1.0).Count(), 4);
  EXPECT_EQ(RevealAtLevel(layer, 0.0).Count(), 16);
}

}  // namespace
}  // namespace yorex
