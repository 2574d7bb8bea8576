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


#include "yorex/bench.h"

#include "yorex/partition.h"
#include "yorex/synthetic_detector.h"

namespace yorex {

uint64_t BenchSceneSeed(uint64_t seed, int objects, int trial) {
  return DeriveSeed(seed, {static_cast<uint64_t>(objects),
                           static_cast<uint64_t>(trial)});
}

std::vector<BenchRow> RunBench(const BenchOptions& options) {
  std::vector<BenchRow> rows;
  for (int n : options.objects) {
    for (int t = 0; t < options.trials; ++t) {
      SceneOptions so = options.scene;
      so.objects = n;
      so.seed = BenchSceneSeed(options.seed, n, t);
      const Scene scene = MakeScene(so);
      const Raster image = scene.Render();
      for (RunMode mode : options.modes) {
        SyntheticBlobDetector detector(image, scene.Classes());
        RunConfig config = options.config;
        config.mode = mode;
        const ExplainResult result = Explain(image, detector, config);
        BenchRow row;
        row.objects = n;
        row.trial = t;
        row.mode = mode;
        row.detected = result.report.object_count;
        row.ledger = result.report.ledger;
        row.batches = result.report.batches;
        row.max_levels = result.report.max_levels;
        row.complete = result.report.complete;
        row.wall_time_ms = result.report.wall_time_ms;
        for (const DetectionReport& d : result.report.detections) {
          row.mean_area_ratio += d.area_ratio;
          if (d.sufficient) ++row.sufficient;
        }
        if (!result.report.detections.empty()) {
          row.mean_area_ratio /= static_cast<double>(result.report.detections.size());
        }
        rows.push_back(row);
      }
    }
  }
  return rows;
}

void WriteBenchCsv(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << "objects,trial,mode,detected,initial,level_search,extraction,total,"
         "batches,max_levels,mean_area_ratio,sufficient,complete,wall_time_ms\n";
  for (const BenchRow& r : rows) {
    out << r.objects << ',' << r.trial << ',' << ModeName(r.mode) << ','
        << r.detected << ',' << r.ledger.initial << ',' << r.ledger.level_search
        << ',' << r.ledger.extraction << ',' << r.ledger.total() << ','
        << r.batches << ',' << r.max_levels << ',' << r.mean_area_ratio << ','
        << r.sufficient << ',' << (r.complete ? 1 : 0) << ',' << r.wall_time_ms
        << '\n';
  }
}

std::vector<double> MeanTotals(const std::vector<BenchRow>& rows,
                               const std::vector<int>& objects, RunMode mode) {
  std::vector<double> out;
  for (int n : objects) {
    double sum = 0.0;
    int count = 0;
    for (const BenchRow& r : rows) {
      if (r.objects == n && r.mode == mode) {
        sum += static_cast<double>(r.ledger.total());
        ++count;
      }
    }
    out.push_back(count ? sum / count : 0.0);
  }
  return out;
}

}  // namespace yorex
