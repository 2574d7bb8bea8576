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

// End-to-end explanation runs.
//
// ExplainImage searches every detection of the image at once: each level
// partitions every active region, probes all detections with shared
// combination mutants, keeps only the first passing combination of each
// detection and refines inside it. ExplainBaseline runs the same machinery
// once per detection on an image where everything but that detection's box is
// masked, which is how single-object explainers are applied to detectors.

#ifndef YOREX_ENGINE_H_
#define YOREX_ENGINE_H_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "yorex/detection.h"
#include "yorex/detector.h"
#include "yorex/extraction.h"
#include "yorex/mutation.h"
#include "yorex/partition.h"
#include "yorex/raster.h"
#include "yorex/responsibility.h"

namespace yorex {

enum class RunMode { kYorex, kBaseline };

const char* ModeName(RunMode mode);
RunMode ParseMode(const std::string& text);

struct RunConfig {
  int iterations = 8;
  int parts = 4;
  SplitDistribution distribution;
  Rgb mask_value = kBlack;
  int64_t min_region = 64;
  double iou_threshold = 0.5;
  uint64_t seed = 0;
  RunMode mode = RunMode::kYorex;
  // Largest number of images per detector request; 0 sends each group whole.
  size_t max_batch = 0;

  // Throws std::invalid_argument on out-of-range values.
  void Validate() const;
};

// State handed to a LevelObserver after a level has been pruned and before its
// passing parts are refined.
struct LevelEvent {
  int iteration = 0;
  int level = 0;
  const ProcessQueue& queue;
  const UpdatedArray& updated;
  const Detections& targets;
  const Raster& image;
};

using LevelObserver = std::function<void(const LevelEvent&)>;

struct DetectionReport {
  Detection detection;
  int64_t explanation_pixels = 0;
  double area_ratio = 0.0;
  bool sufficient = false;
  double level_used = 0.0;
  int extraction_queries = 0;
  std::string error;
};

struct RunReport {
  RunMode mode = RunMode::kYorex;
  RunConfig config;
  bool complete = true;
  std::string error;
  size_t object_count = 0;
  QueryLedger ledger;
  int64_t batches = 0;
  // Deepest refinement level reached in any iteration (0-based count of
  // searched levels).
  int max_levels = 0;
  double wall_time_ms = 0.0;
  std::vector<DetectionReport> detections;
};

struct ExplainResult {
  Detections detections;
  std::vector<Explanation> explanations;
  Layers layers;
  RunReport report;
};

// Runs config.mode. Detector failures never escape: the report is marked
// incomplete and carries the message. std::invalid_argument is thrown for a
// bad configuration.
ExplainResult Explain(const Raster& image, Detector& detector,
                      const RunConfig& config,
                      const LevelObserver& observer = {});

ExplainResult ExplainImage(const Raster& image, Detector& detector,
                           const RunConfig& config,
                           const LevelObserver& observer = {});

ExplainResult ExplainBaseline(const Raster& image, Detector& detector,
                              const RunConfig& config,
                              const LevelObserver& observer = {});

// The level search alone: k iterations over `targets`, returning one
// accumulated layer per target. `seed_ids` name each target in seed
// derivation so the same detection draws the same partitions in either mode.
// Detector errors propagate.
Layers SearchLayers(const Raster& image, const Detections& targets,
                    const std::vector<int>& seed_ids, Detector& detector,
                    const RunConfig& config, const LevelObserver& observer = {},
                    int* max_levels = nullptr);

}  // namespace yorex

#endif  // YOREX_ENGINE_H_
