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

#ifndef YOREX_METRICS_H_
#define YOREX_METRICS_H_

#include <cstdint>
#include <span>

#include "yorex/raster.h"

namespace yorex {

// Fraction of all heatmap pixels that are hot (>= hot_threshold) and lie
// outside every box. 0 means no hot pixel escapes the boxes. Throws
// std::invalid_argument for an empty heatmap or a box outside its frame.
double HotOutside(const GrayImage& heatmap, std::span<const Box> boxes,
                  uint8_t hot_threshold);

}  // namespace yorex

#endif  // YOREX_METRICS_H_
