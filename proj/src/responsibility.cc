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

#include "yorex/responsibility.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace yorex {

ResponsibilityLayer::ResponsibilityLayer(int detection, const Box& box,
                                         int frame_width, int frame_height)
    : detection_(detection),
      box_(box),
      frame_width_(frame_width),
      frame_height_(frame_height) {
  if (!box.FitsIn(frame_width, frame_height)) {
    throw std::invalid_argument("layer box " + box.ToString() +
                                " does not fit the frame");
  }
  scores_.assign(static_cast<size_t>(box.area()), 0.0);
}

void ResponsibilityLayer::Add(const Box& region, double value) {
  const auto clipped = Intersect(region, box_);
  if (!clipped) return;
  const int w = box_.width();
  for (int y = clipped->y0; y < clipped->y1; ++y) {
    double* row = &scores_[static_cast<size_t>(y - box_.y0) * w];
    for (int x = clipped->x0; x < clipped->x1; ++x) row[x - box_.x0] += value;
  }
}

ResponsibilityLayer& ResponsibilityLayer::operator+=(
    const ResponsibilityLayer& other) {
  if (other.box_ != box_ || other.frame_width_ != frame_width_ ||
      other.frame_height_ != frame_height_) {
    throw std::invalid_argument("cannot add layers over different boxes");
  }
  for (size_t i = 0; i < scores_.size(); ++i) scores_[i] += other.scores_[i];
  return *this;
}

std::vector<double> ResponsibilityLayer::LevelsDescending() const {
  std::vector<double> levels = scores_;
  std::sort(levels.begin(), levels.end(), std::greater<>());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  return levels;
}

Layers MakeLayers(const Detections& detections, int frame_width,
                  int frame_height) {
  Layers layers;
  layers.reserve(detections.size());
  for (size_t i = 0; i < detections.size(); ++i) {
    layers.emplace_back(static_cast<int>(i), detections[i].box, frame_width,
                        frame_height);
  }
  return layers;
}

std::vector<LayerIncrement> CausalRanking(const ProcessQueue& queue,
                                          const UpdatedArray& updated,
                                          const PartitionSet& partitions) {
  std::vector<LayerIncrement> out;
  for (size_t i = 0; i < queue.size(); ++i) {
    const QueueEntry& e = queue.entries[i];
    if (e.status != EntryStatus::kActive || updated[i] < 0 || e.passing.empty()) {
      continue;
    }
    const double share = 1.0 / static_cast<double>(e.passing.size());
    const auto& parts = partitions.parts.at(i);
    for (int id : e.passing) {
      out.push_back({static_cast<int>(i), parts.at(id).region, share});
    }
  }
  return out;
}

void Accumulate(Layers& layers, std::span<const LayerIncrement> increments) {
  for (const LayerIncrement& inc : increments) {
    if (inc.detection < 0 || static_cast<size_t>(inc.detection) >= layers.size()) {
      throw std::invalid_argument("increment for unknown detection " +
                                  std::to_string(inc.detection));
    }
    layers[inc.detection].Add(inc.region, inc.value);
  }
}

Layers Accumulate(Layers layers, const Layers& other) {
  if (layers.size() != other.size()) {
    throw std::invalid_argument("layer sets differ in size");
  }
  for (size_t i = 0; i < layers.size(); ++i) layers[i] += other[i];
  return layers;
}

std::vector<double> LandscapeValues(const Layers& layers, LandscapeMode mode,
                                    int detection) {
  if (layers.empty()) throw std::invalid_argument("no layers to export");
  const int w = layers.front().frame_width();
  const int h = layers.front().frame_height();
  std::vector<double> values(static_cast<size_t>(w) * h, 0.0);
  auto add = [&](const ResponsibilityLayer& layer) {
    const Box& b = layer.box();
    for (int y = b.y0; y < b.y1; ++y) {
      for (int x = b.x0; x < b.x1; ++x) {
        values[static_cast<size_t>(y) * w + x] += layer.At(x, y);
      }
    }
  };
  if (mode == LandscapeMode::kSummed) {
    for (const auto& layer : layers) add(layer);
  } else {
    add(layers.at(detection));
  }
  return values;
}

GrayImage ExportLandscape(const Layers& layers, LandscapeMode mode,
                          int detection, std::optional<ScaleRange> scale) {
  const std::vector<double> values = LandscapeValues(layers, mode, detection);
  GrayImage out(layers.front().frame_width(), layers.front().frame_height());
  ScaleRange range;
  if (scale) {
    range = *scale;
  } else {
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    range = {*lo, *hi};
  }
  if (range.max <= 0.0) return out;
  for (size_t i = 0; i < values.size(); ++i) {
    double v;
    if (range.max == range.min) {
      v = values[i] >= range.max ? 255.0 : 0.0;
    } else {
      v = 255.0 * (values[i] - range.min) / (range.max - range.min);
    }
    out.pixels[i] = static_cast<uint8_t>(std::lround(std::clamp(v, 0.0, 255.0)));
  }
  return out;
}

}  // namespace yorex
