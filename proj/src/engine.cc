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

#include "yorex/engine.h"

#include <algorithm>
#include <chrono>
#include <stdexcept>

namespace yorex {

const char* ModeName(RunMode mode) {
  return mode == RunMode::kYorex ? "yorex" : "baseline";
}

RunMode ParseMode(const std::string& text) {
  if (text == "yorex") return RunMode::kYorex;
  if (text == "baseline") return RunMode::kBaseline;
  throw std::invalid_argument("unknown mode '" + text + "'");
}

void RunConfig::Validate() const {
  if (iterations < 1) throw std::invalid_argument("iterations must be >= 1");
  if (parts < 2) throw std::invalid_argument("parts must be >= 2");
  if (parts > 16) {
    throw std::invalid_argument("parts must be <= 16 (2^parts combinations)");
  }
  if (!(iou_threshold > 0.0 && iou_threshold <= 1.0)) {
    throw std::invalid_argument("iou threshold must be in (0, 1]");
  }
  if (min_region < 1) throw std::invalid_argument("min region must be >= 1");
}

namespace {

// Builds and sends one group of mutants, in combination order.
std::vector<Detections> ProbeGroup(const std::vector<Combination>& group,
                                   const ProcessQueue& queue,
                                   const UpdatedArray& updated,
                                   const Raster& image, Rgb mask,
                                   Detector& detector) {
  std::vector<Raster> mutants;
  mutants.reserve(group.size());
  for (const Combination& combo : group) {
    mutants.push_back(GenerateMutant(queue, updated, combo, image, mask));
  }
  return detector.DetectBatch(mutants);
}

// Clips detector boxes to the frame and drops the ones left empty.
Detections SanitizeDetections(const Detections& raw, const Raster& image) {
  Detections out;
  for (const Detection& d : raw) {
    if (auto clipped = Intersect(d.box, image.bounds())) {
      Detection c = d;
      c.box = *clipped;
      out.push_back(std::move(c));
    }
  }
  return out;
}

void FillDetectionReports(ExplainResult& result) {
  result.report.detections.clear();
  for (size_t i = 0; i < result.detections.size(); ++i) {
    DetectionReport r;
    r.detection = result.detections[i];
    if (i < result.explanations.size()) {
      const Explanation& e = result.explanations[i];
      r.explanation_pixels = e.pixels.Count();
      r.area_ratio = static_cast<double>(r.explanation_pixels) /
                     static_cast<double>(r.detection.box.area());
      r.sufficient = e.sufficient;
      r.level_used = e.level_used;
      r.extraction_queries = e.queries_spent;
      r.error = e.error;
    }
    result.report.detections.push_back(std::move(r));
  }
}

void Fail(ExplainResult& result, const std::string& message) {
  result.report.complete = false;
  if (result.report.error.empty()) result.report.error = message;
}

}  // namespace

Layers SearchLayers(const Raster& image, const Detections& targets,
                    const std::vector<int>& seed_ids, Detector& detector,
                    const RunConfig& config, const LevelObserver& observer,
                    int* max_levels) {
  if (seed_ids.size() != targets.size()) {
    throw std::invalid_argument("one seed id per target is required");
  }
  const size_t n = targets.size();
  Layers total = MakeLayers(targets, image.width(), image.height());

  for (int it = 0; it < config.iterations; ++it) {
    ProcessQueue queue = ProcessQueue::FromDetections(targets);
    for (int level = 0;; ++level) {
      PartitionSet partitions;
      partitions.parts.resize(n);
      partitions.seed = DeriveSeed(config.seed, {static_cast<uint64_t>(it),
                                                 static_cast<uint64_t>(level)});
      int widest = 0;
      for (size_t i = 0; i < n; ++i) {
        QueueEntry& e = queue.entries[i];
        if (e.status != EntryStatus::kActive) continue;
        Rng rng(DeriveSeed(config.seed,
                           {static_cast<uint64_t>(it), static_cast<uint64_t>(level),
                            static_cast<uint64_t>(seed_ids[i])}));
        e.parts = PartitionRegion(e.active_region, config.parts,
                                  config.distribution, rng, static_cast<int>(i));
        e.passing.clear();
        if (e.parts.size() < 2) {
          // A single pixel (or otherwise unsplittable region) is final.
          e.status = EntryStatus::kSettled;
          e.parts.clear();
          continue;
        }
        partitions.parts[i] = e.parts;
        widest = std::max(widest, static_cast<int>(e.parts.size()));
      }
      if (widest == 0) break;
      if (max_levels) *max_levels = std::max(*max_levels, level + 1);

      UpdatedArray updated(n);
      int combo_index = 0;
      for (const auto& group : ScheduleCombinations(widest)) {
        const auto preds = ProbeGroup(group, queue, updated, image,
                                      config.mask_value, detector);
        if (preds.size() != group.size()) {
          throw ProtocolError("detector returned a misaligned batch");
        }
        for (size_t j = 0; j < group.size(); ++j) {
          Prune(preds[j], targets, updated, queue, group[j],
                combo_index + static_cast<int>(j), config.iou_threshold);
        }
        combo_index += static_cast<int>(group.size());
        if (AllActiveMatched(queue, updated)) break;
      }

      // Even the full set failed for these: keep what they have.
      for (size_t i = 0; i < n; ++i) {
        QueueEntry& e = queue.entries[i];
        if (e.status == EntryStatus::kActive && updated[i] == -1) {
          e.status = EntryStatus::kFailed;
          e.parts.clear();
        }
      }

      const auto increments = CausalRanking(queue, updated, partitions);
      Accumulate(total, increments);

      if (observer) observer(LevelEvent{it, level, queue, updated, targets, image});

      for (size_t i = 0; i < n; ++i) {
        QueueEntry& e = queue.entries[i];
        if (e.status != EntryStatus::kActive) continue;
        const bool whole = e.passing.size() == partitions.parts[i].size();
        const RefineResult next = Refine(e.parts, config.min_region);
        e.active_region = next.next_region;
        // A level where only the full set passes cannot shrink the region.
        if (whole || next.done) e.status = EntryStatus::kSettled;
      }
    }
  }
  return total;
}

ExplainResult ExplainImage(const Raster& image, Detector& detector,
                           const RunConfig& config,
                           const LevelObserver& observer) {
  config.Validate();
  const auto start = std::chrono::steady_clock::now();
  CountingDetector counter(detector, config.max_batch);
  ExplainResult result;
  result.report.mode = RunMode::kYorex;
  result.report.config = config;

  try {
    {
      PhaseScope phase(counter, QueryPhase::kInitial);
      result.detections = SanitizeDetections(counter.Detect(image), image);
    }
    result.report.object_count = result.detections.size();
    if (!result.detections.empty()) {
      std::vector<int> ids(result.detections.size());
      for (size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<int>(i);
      {
        PhaseScope phase(counter, QueryPhase::kLevelSearch);
        result.layers = SearchLayers(image, result.detections, ids, counter,
                                     config, observer, &result.report.max_levels);
      }
      PhaseScope phase(counter, QueryPhase::kExtraction);
      result.explanations =
          Extract(result.layers, result.detections, counter, image,
                  {config.iou_threshold, config.mask_value});
      for (const auto& e : result.explanations) {
        if (!e.error.empty()) Fail(result, e.error);
      }
    }
  } catch (const DetectorError& e) {
    Fail(result, e.what());
  }

  FillDetectionReports(result);
  result.report.ledger = counter.ledger();
  result.report.batches = counter.batches();
  result.report.wall_time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                start)
          .count();
  return result;
}

ExplainResult ExplainBaseline(const Raster& image, Detector& detector,
                              const RunConfig& config,
                              const LevelObserver& observer) {
  config.Validate();
  const auto start = std::chrono::steady_clock::now();
  CountingDetector counter(detector, config.max_batch);
  ExplainResult result;
  result.report.mode = RunMode::kBaseline;
  result.report.config = config;

  try {
    {
      PhaseScope phase(counter, QueryPhase::kInitial);
      result.detections = SanitizeDetections(counter.Detect(image), image);
    }
    result.report.object_count = result.detections.size();
    result.layers = MakeLayers(result.detections, image.width(), image.height());
    for (size_t j = 0; j < result.detections.size(); ++j) {
      const Detections single = {result.detections[j]};
      const Raster isolated = ApplyMask(
          image,
          PixelSet::FromBox(image.width(), image.height(), single[0].box),
          config.mask_value);
      Layers layer;
      {
        PhaseScope phase(counter, QueryPhase::kLevelSearch);
        layer = SearchLayers(isolated, single, {static_cast<int>(j)}, counter,
                             config, observer, &result.report.max_levels);
      }
      PhaseScope phase(counter, QueryPhase::kExtraction);
      auto explanation = Extract(layer, single, counter, isolated,
                                 {config.iou_threshold, config.mask_value});
      explanation[0].detection = static_cast<int>(j);
      if (!explanation[0].error.empty()) Fail(result, explanation[0].error);
      result.layers[j] += layer[0];
      result.explanations.push_back(std::move(explanation[0]));
      if (!result.report.complete) break;
    }
  } catch (const DetectorError& e) {
    Fail(result, e.what());
  }

  FillDetectionReports(result);
  result.report.ledger = counter.ledger();
  result.report.batches = counter.batches();
  result.report.wall_time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                start)
          .count();
  return result;
}

ExplainResult Explain(const Raster& image, Detector& detector,
                      const RunConfig& config, const LevelObserver& observer) {
  return config.mode == RunMode::kYorex
             ? ExplainImage(image, detector, config, observer)
             : ExplainBaseline(image, detector, config, observer);
}

}  // namespace yorex
