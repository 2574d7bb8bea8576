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

#include "yorex/synthetic_detector.h"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace yorex {

std::vector<BlobClass> DefaultPalette(double min_visible_fraction) {
  std::vector<BlobClass> palette = {
      {"red", {230, 25, 75}},        {"green", {60, 180, 75}},
      {"yellow", {255, 225, 25}},    {"blue", {0, 130, 200}},
      {"orange", {245, 130, 48}},    {"purple", {145, 30, 180}},
      {"cyan", {70, 240, 240}},      {"magenta", {240, 50, 230}},
      {"lime", {210, 245, 60}},      {"pink", {250, 190, 212}},
      {"teal", {0, 128, 128}},       {"lavender", {220, 190, 255}},
      {"brown", {170, 110, 40}},     {"beige", {255, 250, 200}},
      {"maroon", {128, 0, 0}},       {"mint", {170, 255, 195}},
      {"olive", {128, 128, 0}},      {"apricot", {255, 215, 180}},
      {"navy", {0, 0, 128}},         {"grey", {128, 128, 128}},
      {"white", {255, 255, 255}},    {"crimson", {220, 20, 60}},
      {"gold", {255, 200, 0}},       {"indigo", {75, 0, 130}},
  };
  for (auto& c : palette) c.min_visible_fraction = min_visible_fraction;
  return palette;
}

SyntheticBlobDetector::SyntheticBlobDetector(const Raster& reference,
                                             std::vector<BlobClass> classes)
    : width_(reference.width()),
      height_(reference.height()),
      classes_(std::move(classes)) {
  for (size_t i = 0; i < classes_.size(); ++i) {
    for (size_t j = i + 1; j < classes_.size(); ++j) {
      if (classes_[i].color == classes_[j].color) {
        throw std::invalid_argument("blob classes '" + classes_[i].label +
                                    "' and '" + classes_[j].label +
                                    "' share a color");
      }
    }
  }

  std::vector<int> class_of(static_cast<size_t>(width_) * height_, -1);
  for (int y = 0; y < height_; ++y) {
    for (int x = 0; x < width_; ++x) {
      const Rgb c = reference.at(x, y);
      for (size_t k = 0; k < classes_.size(); ++k) {
        if (classes_[k].color == c) {
          class_of[static_cast<size_t>(y) * width_ + x] = static_cast<int>(k);
          break;
        }
      }
    }
  }

  // Flood-fill the 4-connected components in scan order.
  std::vector<bool> seen(class_of.size(), false);
  std::vector<uint32_t> stack;
  for (size_t start = 0; start < class_of.size(); ++start) {
    if (class_of[start] < 0 || seen[start]) continue;
    Blob blob;
    blob.class_index = static_cast<size_t>(class_of[start]);
    blob.box = {width_, height_, 0, 0};
    stack.assign(1, static_cast<uint32_t>(start));
    seen[start] = true;
    while (!stack.empty()) {
      const uint32_t i = stack.back();
      stack.pop_back();
      blob.pixels.push_back(i);
      const int x = static_cast<int>(i % width_);
      const int y = static_cast<int>(i / width_);
      blob.box.x0 = std::min(blob.box.x0, x);
      blob.box.y0 = std::min(blob.box.y0, y);
      blob.box.x1 = std::max(blob.box.x1, x + 1);
      blob.box.y1 = std::max(blob.box.y1, y + 1);
      auto visit = [&](int nx, int ny) {
        if (nx < 0 || ny < 0 || nx >= width_ || ny >= height_) return;
        const size_t j = static_cast<size_t>(ny) * width_ + nx;
        if (seen[j] || class_of[j] != class_of[start]) return;
        seen[j] = true;
        stack.push_back(static_cast<uint32_t>(j));
      };
      visit(x - 1, y);
      visit(x + 1, y);
      visit(x, y - 1);
      visit(x, y + 1);
    }
    std::sort(blob.pixels.begin(), blob.pixels.end());
    blobs_.push_back(std::move(blob));
  }
}

Detections SyntheticBlobDetector::DetectOne(const Raster& image) const {
  if (image.width() != width_ || image.height() != height_) {
    throw std::invalid_argument("query image is " +
                                std::to_string(image.width()) + "x" +
                                std::to_string(image.height()) +
                                ", detector was built for " +
                                std::to_string(width_) + "x" +
                                std::to_string(height_));
  }
  Detections out;
  const auto data = image.data();
  for (const Blob& blob : blobs_) {
    const BlobClass& cls = classes_[blob.class_index];
    int64_t visible = 0;
    Box box{width_, height_, 0, 0};
    for (uint32_t i : blob.pixels) {
      const uint8_t* p = &data[static_cast<size_t>(i) * 3];
      if (p[0] != cls.color.r || p[1] != cls.color.g || p[2] != cls.color.b) {
        continue;
      }
      ++visible;
      const int x = static_cast<int>(i % width_);
      const int y = static_cast<int>(i / width_);
      box.x0 = std::min(box.x0, x);
      box.y0 = std::min(box.y0, y);
      box.x1 = std::max(box.x1, x + 1);
      box.y1 = std::max(box.y1, y + 1);
    }
    const double area = static_cast<double>(blob.pixels.size());
    if (visible == 0 || static_cast<double>(visible) < cls.min_visible_fraction * area) {
      continue;
    }
    out.push_back({cls.label, static_cast<double>(visible) / area, box});
  }
  return out;
}

std::vector<Detections> SyntheticBlobDetector::DetectBatch(
    std::span<const Raster> images) {
  std::vector<Detections> out;
  out.reserve(images.size());
  for (const Raster& image : images) out.push_back(DetectOne(image));
  return out;
}

}  // namespace yorex
