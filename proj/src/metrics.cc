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

#include "yorex/metrics.h"

#include <stdexcept>
#include <string>

namespace yorex {

double HotOutside(const GrayImage& heatmap, std::span<const Box> boxes,
                  uint8_t hot_threshold) {
  if (heatmap.width < 1 || heatmap.height < 1 ||
      heatmap.pixels.size() !=
          static_cast<size_t>(heatmap.width) * heatmap.height) {
    throw std::invalid_argument("heatmap is empty or malformed");
  }
  PixelSet covered(heatmap.width, heatmap.height);
  for (const Box& b : boxes) {
    if (!b.FitsIn(heatmap.width, heatmap.height)) {
      throw std::invalid_argument("box " + b.ToString() +
                                  " lies outside the heatmap frame");
    }
    covered.InsertBox(b);
  }
  int64_t hot = 0;
  for (int y = 0; y < heatmap.height; ++y) {
    for (int x = 0; x < heatmap.width; ++x) {
      if (heatmap.at(x, y) >= hot_threshold && !covered.Contains(x, y)) ++hot;
    }
  }
  return static_cast<double>(hot) /
         (static_cast<double>(heatmap.width) * heatmap.height);
}

}  // namespace yorex
