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


#include "yorex/image_io.h"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

namespace yorex {
namespace {

std::string TempPath(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "yorex_image_io_test";
  std::filesystem::create_directories(dir);
  return (dir / name).string();
}

Raster Noise(int w, int h, uint64_t seed) {
  std::mt19937_64 rng(seed);
  Raster r(w, h);
  for (auto& b : r.mutable_data()) b = static_cast<uint8_t>(rng());
  return r;
}

TEST(ImageIoTest, PngRoundTripIsExact) {
  const Raster img = Noise(37, 19, 1);
  const std::string path = TempPath("rt.png");
  WritePng(path, img);
  EXPECT_EQ(ReadImage(path), img);
}

TEST(ImageIoTest, PpmRoundTripIsExact) {
  const Raster img = Noise(5, 8, 2);
  const std::string path = TempPath("rt.ppm");
  WritePpm(path, img);
  EXPECT_EQ(ReadImage(path), img);
}

TEST(ImageIoTest, PpmWithComments) {
  const std::string path = TempPath("comment.ppm");
  {
    std::ofstream out(path, std::ios::binary);
    out << "P6\n# made by hand\n2 1\n# another\n255\n";
    const char px[] = {1, 2, 3, 4, 5, 6};
    out.write(px, 6);
  }
  const Raster r = ReadImage(path);
  EXPECT_EQ(r.width(), 2);
  EXPECT_EQ(r.at(1, 0), (Rgb{4, 5, 6}));
}

TEST(ImageIoTest, RejectsTruncatedAndUnknown) {
  const std::string trunc = TempPath("trunc.ppm");
  {
    std::ofstream out(trunc, std::ios::binary);
    out << "P6 4 4 255\n" << "abc";
  }
  EXPECT_THROW(ReadImage(trunc), ImageIoError);
  const std::string junk = TempPath("junk.bin");
  {
    std::ofstream out(junk, std::ios::binary);
    out << "hello world";
  }
  EXPECT_THROW(ReadImage(junk), ImageIoError);
  EXPECT_THROW(ReadImage(TempPath("missing.png")), ImageIoError);
}

TEST(ImageIoTest, GrayPngRoundTrip) {
  GrayImage g(6, 3);
  for (size_t i = 0; i < g.pixels.size(); ++i) g.pixels[i] = static_cast<uint8_t>(i * 13);
  const std::string path = TempPath("gray.png");
  WritePng(path, g);
  EXPECT_EQ(ReadGrayImage(path), g);
}

TEST(ImageIoTest, RgbHeatmapUsesLuma) {
  Raster r(3, 1);
  r.set(0, 0, {255, 0, 0});
  r.set(1, 0, {0, 255, 0});
  r.set(2, 0, {200, 200, 200});
  const std::string path = TempPath("rgbheat.png");
  WritePng(path, r);
  const GrayImage g = ReadGrayImage(path);
  EXPECT_EQ(g.at(0, 0), (299 * 255 + 500) / 1000);
  EXPECT_EQ(g.at(1, 0), (587 * 255 + 500) / 1000);
  EXPECT_EQ(g.at(2, 0), 200);
}

}  // namespace
}  // namespace yorex
