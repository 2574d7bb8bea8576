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

#ifndef YOREX_EXTRACTION_H_
#define YOREX_EXTRACTION_H_

#include <string>
#include <vector>

#include "yorex/detection.h"
#include "yorex/detector.h"
#include "yorex/raster.h"
#include "yorex/responsibility.h"

namespace yorex {

struct Explanation {
  int detection = 0;
  PixelSet pixels{0, 0};
  // Responsibility threshold at which the reveal passed.
  double level_used = 0.0;
  int queries_spent = 0;
  bool sufficient = false;
  // Set when the detector failed during extraction.
  std::string error;
};

struct ExtractOptions {
  double iou_threshold = 0.5;
  Rgb mask_value = kBlack;
};

// Pixels of the layer's box with score >= threshold.
PixelSet RevealAtLevel(const ResponsibilityLayer& layer, double threshold);

// Builds one explanation per detection by lowering a responsibility threshold
// through the distinct scores of its own layer and revealing, inside its
// original box only, every pixel at or above it. The first reveal that brings
// back the label (IoU >= threshold) is the explanation; the lowest level
// reveals the whole box. Reveals for different detections that are at the
// same step are sent as one batch, each on its own single-box mutant.
//
// A detector failure marks every unfinished explanation insufficient with the
// full box and records the error; it is not rethrown.
std::vector<Explanation> Extract(const Layers& layers,
                                 const Detections& detections,
                                 Detector& detector, const Raster& image,
                                 const ExtractOptions& options);

}  // namespace yorex

#endif  // YOREX_EXTRACTION_H_
