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

#include "yorex/scene.h"

#include <cmath>
#include <random>
#include <stdexcept>

#include "yorex/partition.h"

namespace yorex {

Raster Scene::Render() const {
  Raster image(width, height, background);
  for (const SceneBlob& b : blobs) image.Fill(b.box, b.color);
  return image;
}

std::vector<BlobClass> Scene::Classes() const {
  std::vector<BlobClass> out;
  for (const SceneBlob& b : blobs) {
    bool known = false;
    for (const BlobClass& c : out) known = known || c.color == b.color;
    if (!known) out.push_back({b.label, b.color, b.min_visible_fraction});
  }
  return out;
}

Scene MakeScene(const SceneOptions& options) {
  if (options.objects < 0) throw std::invalid_argument("negative object count");
  if (options.min_size < 1 || options.max_size < options.min_size) {
    throw std::invalid_argument("invalid blob size range");
  }
  const auto palette = DefaultPalette(options.min_visible_fraction);
  Rng rng(DeriveSeed(options.seed, {0x5ce9e}));
  std::uniform_int_distribution<int> size(options.min_size, options.max_size);

  Scene scene;
  const int gap = 4;
  const int cell = options.max_size + gap;
  const int cols = std::max(
      1, static_cast<int>(std::ceil(std::sqrt(static_cast<double>(options.objects)))));
  const int rows = std::max(1, (options.objects + cols - 1) / cols);
  scene.width = cols * cell + gap;
  scene.height = rows * cell + gap;

  for (int i = 0; i < options.objects; ++i) {
    const BlobClass& cls = palette[i % palette.size()];
    const int w = size(rng);
    const int h = size(rng);
    int x0, y0;
    if (options.allow_overlap) {
      x0 = std::uniform_int_distribution<int>(0, scene.width - w)(rng);
      y0 = std::uniform_int_distribution<int>(0, scene.height - h)(rng);
    } else {
      const int cx = (i % cols) * cell + gap;
      const int cy = (i / cols) * cell + gap;
      x0 = cx + std::uniform_int_distribution<int>(0, options.max_size - w)(rng);
      y0 = cy + std::uniform_int_distribution<int>(0, options.max_size - h)(rng);
    }
    scene.blobs.push_back(
        {cls.label, cls.color, {x0, y0, x0 + w, y0 + h}, options.min_visible_fraction});
  }
  return scene;
}

namespace {

nlohmann::json ColorJson(Rgb c) { return {c.r, c.g, c.b}; }

Rgb ColorFromJson(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 3) {
    throw std::invalid_argument("color must be [r,g,b]");
  }
  return {j[0].get<uint8_t>(), j[1].get<uint8_t>(), j[2].get<uint8_t>()};
}

}  // namespace

nlohmann::json SceneToJson(const Scene& scene) {
  nlohmann::json blobs = nlohmann::json::array();
  for (const SceneBlob& b : scene.blobs) {
    blobs.push_back({{"label", b.label},
                     {"color", ColorJson(b.color)},
                     {"box", {b.box.x0, b.box.y0, b.box.x1, b.box.y1}},
                     {"min_visible_fraction", b.min_visible_fraction}});
  }
  return {{"width", scene.width},
          {"height", scene.height},
          {"background", ColorJson(scene.background)},
          {"blobs", blobs}};
}

Scene SceneFromJson(const nlohmann::json& doc) {
  try {
    Scene scene;
    scene.width = doc.at("width").get<int>();
    scene.height = doc.at("height").get<int>();
    if (doc.contains("background")) {
      scene.background = ColorFromJson(doc.at("background"));
    }
    for (const auto& b : doc.at("blobs")) {
      const auto& box = b.at("box");
      if (!box.is_array() || box.size() != 4) {
        throw std::invalid_argument("blob box must be [x0,y0,x1,y1]");
      }
      SceneBlob blob{b.at("label").get<std::string>(), ColorFromJson(b.at("color")),
                     {box[0].get<int>(), box[1].get<int>(), box[2].get<int>(),
                      box[3].get<int>()},
                     b.value("min_visible_fraction", 0.25)};
      if (!blob.box.FitsIn(scene.width, scene.height)) {
        throw std::invalid_argument("blob box " + blob.box.ToString() +
                                    " does not fit the scene");
      }
      scene.blobs.push_back(std::move(blob));
    }
    return scene;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed scene: ") + e.what());
  }
}

}  // namespace yorex
