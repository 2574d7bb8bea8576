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


// Query-count benchmark over generated blob scenes.

#ifndef YOREX_BENCH_H_
#define YOREX_BENCH_H_

#include <cstdint>
#include <ostream>
#include <vector>

#include "yorex/engine.h"
#include "yorex/scene.h"

namespace yorex {

struct BenchOptions {
  std::vector<int> objects{1, 5, 10, 20};
  int trials = 1;
  uint64_t seed = 0;
  std::vector<RunMode> modes{RunMode::kYorex, RunMode::kBaseline};
  RunConfig config;
  // Size, overlap and visibility of generated blobs; objects and seed are
  // filled in per trial.
  SceneOptions scene;
};

struct BenchRow {
  int objects = 0;
  int trial = 0;
  RunMode mode = RunMode::kYorex;
  size_t detected = 0;
  QueryLedger ledger;
  int64_t batches = 0;
  int max_levels = 0;
  double mean_area_ratio = 0.0;
  int sufficient = 0;
  bool complete = true;
  double wall_time_ms = 0.0;
};

// Scene seed of one (objects, trial) cell; both modes see the same scene.
uint64_t BenchSceneSeed(uint64_t seed, int objects, int trial);

std::vector<BenchRow> RunBench(const BenchOptions& options);

void WriteBenchCsv(std::ostream& out, const std::vector<BenchRow>& rows);

// Mean total queries per object count for one mode, in options.objects order.
std::vector<double> MeanTotals(const std::vector<BenchRow>& rows,
                               const std::vector<int>& objects, RunMode mode);

}  // namespace yorex

#endif  // YOREX_BENCH_H_
