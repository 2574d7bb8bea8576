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

#include "yorex/report.h"

#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "yorex/image_io.h"

namespace yorex {

RleMask EncodeRle(const PixelSet& pixels, const Box& box) {
  RleMask rle{box, {}};
  bool current = false;
  int64_t run = 0;
  for (int y = box.y0; y < box.y1; ++y) {
    for (int x = box.x0; x < box.x1; ++x) {
      const bool v = pixels.Contains(x, y);
      if (v != current) {
        rle.counts.push_back(run);
        run = 0;
        current = v;
      }
      ++run;
    }
  }
  rle.counts.push_back(run);
  return rle;
}

PixelSet DecodeRle(const RleMask& rle, int width, int height) {
  if (!rle.box.FitsIn(width, height)) {
    throw std::invalid_argument("RLE box does not fit the frame");
  }
  PixelSet out(width, height);
  int64_t pos = 0;
  bool value = false;
  const int64_t total = rle.box.area();
  for (int64_t run : rle.counts) {
    if (run < 0 || pos + run > total) {
      throw std::invalid_argument("RLE runs overflow the box");
    }
    if (value) {
      for (int64_t i = pos; i < pos + run; ++i) {
        out.Insert(rle.box.x0 + static_cast<int>(i % rle.box.width()),
                   rle.box.y0 + static_cast<int>(i / rle.box.width()));
      }
    }
    pos += run;
    value = !value;
  }
  if (pos != total) throw std::invalid_argument("RLE runs do not cover the box");
  return out;
}

GrayImage MaskImage(const PixelSet& pixels) {
  GrayImage out(pixels.width(), pixels.height());
  for (int y = 0; y < pixels.height(); ++y) {
    for (int x = 0; x < pixels.width(); ++x) {
      if (pixels.Contains(x, y)) out.at(x, y) = 255;
    }
  }
  return out;
}

namespace {

nlohmann::ordered_json BoxJson(const Box& b) { return {b.x0, b.y0, b.x1, b.y1}; }

nlohmann::ordered_json ConfigJson(const RunConfig& c) {
  nlohmann::ordered_json j;
  j["iterations"] = c.iterations;
  j["parts"] = c.parts;
  j["distribution"] = c.distribution.ToString();
  j["mask"] = {c.mask_value.r, c.mask_value.g, c.mask_value.b};
  j["min_region"] = c.min_region;
  j["iou_threshold"] = c.iou_threshold;
  j["seed"] = c.seed;
  j["mode"] = ModeName(c.mode);
  j["max_batch"] = c.max_batch;
  return j;
}

}  // namespace

nlohmann::ordered_json ReportToJson(const ExplainResult& result,
                                    bool include_timing) {
  const RunReport& r = result.report;
  nlohmann::ordered_json j;
  j["mode"] = ModeName(r.mode);
  j["complete"] = r.complete;
  j["error"] = r.error.empty() ? nlohmann::ordered_json() : nlohmann::ordered_json(r.error);
  j["object_count"] = r.object_count;
  j["ledger"] = {{"initial", r.ledger.initial},
                 {"level_search", r.ledger.level_search},
                 {"extraction", r.ledger.extraction},
                 {"total", r.ledger.total()}};
  j["batches"] = r.batches;
  j["max_levels"] = r.max_levels;
  if (include_timing) j["wall_time_ms"] = r.wall_time_ms;
  j["config"] = ConfigJson(r.config);

  auto detections = nlohmann::ordered_json::array();
  for (size_t i = 0; i < r.detections.size(); ++i) {
    const DetectionReport& d = r.detections[i];
    nlohmann::ordered_json dj;
    dj["index"] = i;
    dj["label"] = d.detection.label;
    dj["confidence"] = d.detection.confidence;
    dj["box"] = BoxJson(d.detection.box);
    if (i < result.explanations.size()) {
      const Explanation& e = result.explanations[i];
      nlohmann::ordered_json ej;
      ej["pixels"] = d.explanation_pixels;
      ej["area_ratio"] = d.area_ratio;
      ej["sufficient"] = d.sufficient;
      ej["level"] = d.level_used;
      ej["queries"] = d.extraction_queries;
      ej["error"] = d.error.empty() ? nlohmann::ordered_json()
                                    : nlohmann::ordered_json(d.error);
      const RleMask rle = EncodeRle(e.pixels, d.detection.box);
      ej["rle"] = {{"box", BoxJson(rle.box)}, {"counts", rle.counts}};
      dj["explanation"] = std::move(ej);
    } else {
      dj["explanation"] = nullptr;
    }
    detections.push_back(std::move(dj));
  }
  j["detections"] = std::move(detections);
  return j;
}

void WriteRunArtifacts(const ExplainResult& result, const std::string& dir) {
  std::filesystem::create_directories(dir);
  const std::filesystem::path root(dir);
  {
    std::ofstream out(root / "report.json");
    if (!out) throw std::runtime_error("cannot write " + (root / "report.json").string());
    out << ReportToJson(result).dump(2) << "\n";
  }
  for (size_t i = 0; i < result.explanations.size(); ++i) {
    WritePng((root / ("explanation_" + std::to_string(i) + ".png")).string(),
             MaskImage(result.explanations[i].pixels));
  }
  if (!result.layers.empty()) {
    for (size_t i = 0; i < result.layers.size(); ++i) {
      WritePng((root / ("landscape_" + std::to_string(i) + ".png")).string(),
               ExportLandscape(result.layers, LandscapeMode::kPerDetection,
                               static_cast<int>(i)));
    }
    WritePng((root / "landscape_sum.png").string(),
             ExportLandscape(result.layers, LandscapeMode::kSummed));
  }
}

}  // namespace yorex
