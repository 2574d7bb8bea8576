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

#include <stdexcept>

namespace yorex {

PixelSet RevealAtLevel(const ResponsibilityLayer& layer, double threshold) {
  PixelSet out(layer.frame_width(), layer.frame_height());
  const Box& b = layer.box();
  for (int y = b.y0; y < b.y1; ++y) {
    for (int x = b.x0; x < b.x1; ++x) {
      if (layer.At(x, y) >= threshold) out.Insert(x, y);
    }
  }
  return out;
}

std::vector<Explanation> Extract(const Layers& layers,
                                 const Detections& detections,
                                 Detector& detector, const Raster& image,
                                 const ExtractOptions& options) {
  if (layers.size() != detections.size()) {
    throw std::invalid_argument("one layer per detection is required");
  }
  const int w = image.width();
  const int h = image.height();

  std::vector<Explanation> out(detections.size());
  std::vector<std::vector<double>> levels(detections.size());
  std::vector<bool> done(detections.size(), false);
  for (size_t i = 0; i < detections.size(); ++i) {
    if (layers[i].box() != detections[i].box) {
      throw std::invalid_argument("layer box differs from detection box");
    }
    out[i].detection = static_cast<int>(i);
    out[i].pixels = PixelSet::FromBox(w, h, detections[i].box);
    levels[i] = layers[i].LevelsDescending();
  }

  for (size_t step = 0;; ++step) {
    std::vector<size_t> batch_owner;
    std::vector<PixelSet> reveals;
    std::vector<Raster> mutants;
    for (size_t i = 0; i < detections.size(); ++i) {
      if (done[i] || step >= levels[i].size()) continue;
      batch_owner.push_back(i);
      reveals.push_back(RevealAtLevel(layers[i], levels[i][step]));
      mutants.push_back(ApplyMask(image, reveals.back(), options.mask_value));
    }
    if (batch_owner.empty()) break;

    std::vector<Detections> preds;
    try {
      preds = detector.DetectBatch(mutants);
      if (preds.size() != mutants.size()) {
        throw ProtocolError("detector returned a misaligned batch");
      }
    } catch (const DetectorError& e) {
      for (size_t i = 0; i < detections.size(); ++i) {
        if (done[i]) continue;
        out[i].pixels = PixelSet::FromBox(w, h, detections[i].box);
        out[i].sufficient = false;
        out[i].error = e.what();
        done[i] = true;
      }
      for (size_t i : batch_owner) ++out[i].queries_spent;
      break;
    }

    for (size_t k = 0; k < batch_owner.size(); ++k) {
      const size_t i = batch_owner[k];
      ++out[i].queries_spent;
      if (Matches(preds[k], detections[i], options.iou_threshold)) {
        out[i].pixels = std::move(reveals[k]);
        out[i].level_used = levels[i][step];
        out[i].sufficient = true;
        done[i] = true;
      } else if (step + 1 == levels[i].size()) {
        // Even the whole box failed (nondeterministic or inconsistent
        // detector); report it rather than loop.
        out[i].pixels = std::move(reveals[k]);
        out[i].level_used = levels[i][step];
        out[i].sufficient = false;
        done[i] = true;
      }
    }
  }
  return out;
}

}  // namespace yorex
