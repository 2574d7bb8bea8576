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

// Process queue, combination schedule, multi-box mutants and pruning.
//
// All detections are searched together: one combination of part ids is applied
// to every pending detection at once, so a single mutant probes every object.

#ifndef YOREX_MUTATION_H_
#define YOREX_MUTATION_H_

#include <cstddef>
#include <vector>

#include "yorex/detection.h"
#include "yorex/partition.h"
#include "yorex/raster.h"

namespace yorex {

enum class EntryStatus {
  kActive,   // still being refined
  kSettled,  // refinement finished; active_region is final
  kFailed,   // no combination passed; active_region is irreducible
};

const char* StatusName(EntryStatus status);

struct QueueEntry {
  Detection original;
  // Box of the last matched prediction, clipped to the original box.
  Box current_box;
  // Disjoint rectangles, always inside original.box.
  std::vector<Box> active_region;
  // Partition of active_region at the current level. After a match only the
  // passing parts remain.
  std::vector<Part> parts;
  // Ids of the passing parts at the current level.
  std::vector<int> passing;
  EntryStatus status = EntryStatus::kActive;

  int64_t ActiveArea() const { return TotalArea(active_region); }
};

struct ProcessQueue {
  std::vector<QueueEntry> entries;

  static ProcessQueue FromDetections(const Detections& detections);
  size_t size() const { return entries.size(); }
};

// One slot per detection: -1 until a combination passes, then the index of
// that combination in the level's schedule.
class UpdatedArray {
 public:
  explicit UpdatedArray(size_t size) : slots_(size, -1) {}

  int operator[](size_t i) const { return slots_.at(i); }
  size_t size() const { return slots_.size(); }
  // Throws std::logic_error when the slot is already set.
  void Set(size_t i, int combo_index);
  void Reset();

 private:
  std::vector<int> slots_;
};

// True when every ACTIVE entry has a passing combination.
bool AllActiveMatched(const ProcessQueue& queue, const UpdatedArray& updated);

struct Combination {
  std::vector<int> part_ids;  // sorted, non-empty

  int size() const { return static_cast<int>(part_ids.size()); }
  bool operator==(const Combination&) const = default;
};

// Combinations of {0..s-1} grouped by size: all singletons, then all pairs in
// lexicographic order, and so on up to the full set. Group g holds C(s, g)
// combinations.
std::vector<std::vector<Combination>> ScheduleCombinations(int s);

// The combination restricted to ids below `part_count`.
std::vector<int> ClipCombination(const Combination& combo, int part_count);

// Pixels a mutant reveals: the combination's parts of every pending ACTIVE
// entry, the retained parts of entries already matched at this level, and
// the active region of SETTLED and FAILED entries.
PixelSet RevealedPixels(const ProcessQueue& queue, const UpdatedArray& updated,
                        const Combination& combo, int width, int height);

// `image` masked outside RevealedPixels. Throws std::invalid_argument for an
// empty queue.
Raster GenerateMutant(const ProcessQueue& queue, const UpdatedArray& updated,
                      const Combination& combo, const Raster& image,
                      Rgb mask_value);

// Everything the queue still keeps: the parts of ACTIVE entries and the
// active region of the others.
PixelSet RetainedPixels(const ProcessQueue& queue, int width, int height);

// Matches the detector output on one mutant against the targets. Each ACTIVE
// target whose slot is still -1 and whose label comes back with IoU at least
// `iou_threshold` is settled for this level: its slot becomes `combo_index`,
// its parts shrink to the combination and its current box becomes the
// matched prediction. Predictions that match no target are ignored.
void Prune(const Detections& preds, const Detections& targets,
           UpdatedArray& updated, ProcessQueue& queue, const Combination& combo,
           int combo_index, double iou_threshold);

}  // namespace yorex

#endif  // YOREX_MUTATION_H_
