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

#ifndef YOREX_SYNTHETIC_DETECTOR_H_
#define YOREX_SYNTHETIC_DETECTOR_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "yorex/detector.h"
#include "yorex/raster.h"

namespace yorex {

struct BlobClass {
  std::string label;
  Rgb color;
  double min_visible_fraction = 0.25;
};

// Named, pairwise distinct, non-black colors.
std::vector<BlobClass> DefaultPalette(double min_visible_fraction = 0.25);

// Deterministic in-process detector over flat-colored scenes.
//
// The blobs are the 4-connected regions of each class color in a reference
// image. On a query image a blob is reported when at least
// min_visible_fraction of its reference pixels still show its color; the box
// is the tight bounding box of those visible pixels and the confidence is the
// visible fraction.
class SyntheticBlobDetector : public Detector {
 public:
  struct Blob {
    size_t class_index = 0;
    Box box;
    std::vector<uint32_t> pixels;  // row-major indices into the frame
  };

  // Throws std::invalid_argument when two classes share a color.
  SyntheticBlobDetector(const Raster& reference, std::vector<BlobClass> classes);

  std::vector<Detections> DetectBatch(std::span<const Raster> images) override;
  Detections DetectOne(const Raster& image) const;

  const std::vector<Blob>& blobs() const { return blobs_; }
  const std::vector<BlobClass>& classes() const { return classes_; }

 private:
  int width_;
  int height_;
  std::vector<BlobClass> classes_;
  std::vector<Blob> blobs_;
};

}  // namespace yorex

#endif  // YOREX_SYNTHETIC_DETECTOR_H_
