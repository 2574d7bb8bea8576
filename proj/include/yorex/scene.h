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

// Flat-colored synthetic scenes for benchmarks and tests.

#ifndef YOREX_SCENE_H_
#define YOREX_SCENE_H_

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "yorex/raster.h"
#include "yorex/synthetic_detector.h"

namespace yorex {

struct SceneBlob {
  std::string label;
  Rgb color;
  Box box;
  double min_visible_fraction = 0.25;
};

struct Scene {
  int width = 0;
  int height = 0;
  Rgb background{40, 40, 40};
  // Painted in order; later blobs cover earlier ones.
  std::vector<SceneBlob> blobs;

  Raster Render() const;
  // Distinct (label, color) classes in first-use order.
  std::vector<BlobClass> Classes() const;
};

struct SceneOptions {
  int objects = 1;
  int min_size = 24;
  int max_size = 40;
  // Free placement (blobs may overlap) instead of one blob per grid cell.
  bool allow_overlap = false;
  double min_visible_fraction = 0.25;
  uint64_t seed = 0;
};

// Blobs take palette colors in order, cycling when there are more objects
// than colors. Without overlap the frame is a grid of cells just large enough
// for the requested objects.
Scene MakeScene(const SceneOptions& options);

nlohmann::json SceneToJson(const Scene& scene);
// Throws std::invalid_argument on a malformed document.
Scene SceneFromJson(const nlohmann::json& doc);

}  // namespace yorex

#endif  // YOREX_SCENE_H_
