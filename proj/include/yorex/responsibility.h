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

// Per-detection responsibility layers.
//
// Each detection owns a layer covering only its original box, so overlapping
// objects never share scores. A passing combination of g parts awards 1/g to
// every pixel of each of its parts; discarded parts receive nothing. Layers
// hold raw sums over levels and iterations: extraction only looks at the
// ordering of values, which a division by the iteration count would not
// change.

#ifndef YOREX_RESPONSIBILITY_H_
#define YOREX_RESPONSIBILITY_H_

#include <optional>
#include <span>
#include <vector>

#include "yorex/detection.h"
#include "yorex/mutation.h"
#include "yorex/partition.h"
#include "yorex/raster.h"

namespace yorex {

class ResponsibilityLayer {
 public:
  ResponsibilityLayer(int detection, const Box& box, int frame_width,
                      int frame_height);

  int detection() const { return detection_; }
  const Box& box() const { return box_; }
  int frame_width() const { return frame_width_; }
  int frame_height() const { return frame_height_; }

  // Score of a frame pixel; exactly 0 outside the box.
  double At(int x, int y) const {
    if (!box_.Contains(x, y)) return 0.0;
    return scores_[static_cast<size_t>(y - box_.y0) * box_.width() +
                   (x - box_.x0)];
  }

  // Adds `value` to every pixel of `region` that lies inside the box.
  void Add(const Box& region, double value);

  // Element-wise sum. Throws std::invalid_argument unless both layers cover
  // the same box in the same frame.
  ResponsibilityLayer& operator+=(const ResponsibilityLayer& other);

  // Box-local scores, row-major.
  std::span<const double> scores() const { return scores_; }

  // Distinct scores inside the box, highest first.
  std::vector<double> LevelsDescending() const;

  bool operator==(const ResponsibilityLayer&) const = default;

 private:
  int detection_;
  Box box_;
  int frame_width_;
  int frame_height_;
  std::vector<double> scores_;
};

using Layers = std::vector<ResponsibilityLayer>;

// One zeroed layer per detection.
Layers MakeLayers(const Detections& detections, int frame_width,
                  int frame_height);

struct LayerIncrement {
  int detection = 0;
  Box region;
  double value = 0.0;

  bool operator==(const LayerIncrement&) const = default;
};

// Increments for one completed level: 1/g for each part of every ACTIVE
// detection with a passing combination of g parts. Unmatched and FAILED
// detections contribute nothing.
std::vector<LayerIncrement> CausalRanking(const ProcessQueue& queue,
                                          const UpdatedArray& updated,
                                          const PartitionSet& partitions);

// Adds increments into the layers. Throws std::invalid_argument when an
// increment names a detection without a layer.
void Accumulate(Layers& layers, std::span<const LayerIncrement> increments);

// Pixel-wise sum of two layer sets of identical shape.
Layers Accumulate(Layers layers, const Layers& other);

enum class LandscapeMode { kPerDetection, kSummed };

struct ScaleRange {
  double min = 0.0;
  double max = 0.0;
};

// Grayscale view of the landscape over the whole frame, min-max scaled to
// 0..255 (or to `scale` when given). An all-zero landscape maps to black and a
// flat non-zero one to white.
GrayImage ExportLandscape(const Layers& layers, LandscapeMode mode,
                          int detection = 0,
                          std::optional<ScaleRange> scale = std::nullopt);

// Raw (unscaled) frame values behind ExportLandscape.
std::vector<double> LandscapeValues(const Layers& layers, LandscapeMode mode,
                                    int detection = 0);

}  // namespace yorex

#endif  // YOREX_RESPONSIBILITY_H_
