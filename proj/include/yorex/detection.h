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

#ifndef YOREX_DETECTION_H_
#define YOREX_DETECTION_H_

#include <optional>
#include <string>
#include <vector>

#include "yorex/raster.h"

namespace yorex {

struct Detection {
  std::string label;
  double confidence = 0.0;
  Box box;

  bool operator==(const Detection&) const = default;
};

using Detections = std::vector<Detection>;

// Index of the prediction carrying `target.label` whose box overlaps
// `target.box` best, provided that overlap reaches `iou_threshold`. Confidence
// plays no part. Ties keep the earliest prediction.
std::optional<size_t> BestMatch(const Detections& preds, const Detection& target,
                                double iou_threshold);

inline bool Matches(const Detections& preds, const Detection& target,
                    double iou_threshold) {
  return BestMatch(preds, target, iou_threshold).has_value();
}

}  // namespace yorex

#endif  // YOREX_DETECTION_H_
