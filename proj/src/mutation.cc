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

#include "yorex/mutation.h"

#include <algorithm>
#include <stdexcept>

namespace yorex {

const char* StatusName(EntryStatus status) {
  switch (status) {
    case EntryStatus::kActive:
      return "active";
    case EntryStatus::kSettled:
      return "settled";
    case EntryStatus::kFailed:
      return "failed";
  }
  return "unknown";
}

ProcessQueue ProcessQueue::FromDetections(const Detections& detections) {
  ProcessQueue queue;
  queue.entries.reserve(detections.size());
  for (const Detection& d : detections) {
    QueueEntry e;
    e.original = d;
    e.current_box = d.box;
    e.active_region = {d.box};
    queue.entries.push_back(std::move(e));
  }
  return queue;
}

void UpdatedArray::Set(size_t i, int combo_index) {
  if (combo_index < 0) throw std::invalid_argument("negative combination index");
  if (slots_.at(i) != -1) {
    throw std::logic_error("updated slot " + std::to_string(i) +
                           " is already set");
  }
  slots_[i] = combo_index;
}

void UpdatedArray::Reset() { std::fill(slots_.begin(), slots_.end(), -1); }

bool AllActiveMatched(const ProcessQueue& queue, const UpdatedArray& updated) {
  for (size_t i = 0; i < queue.size(); ++i) {
    if (queue.entries[i].status == EntryStatus::kActive && updated[i] == -1) {
      return false;
    }
  }
  return true;
}

std::vector<std::vector<Combination>> ScheduleCombinations(int s) {
  if (s < 1) throw std::invalid_argument("schedule needs at least one part");
  std::vector<std::vector<Combination>> groups;
  for (int g = 1; g <= s; ++g) {
    std::vector<Combination> group;
    // Lexicographic enumeration of g-subsets of {0..s-1}.
    std::vector<int> idx(g);
    for (int i = 0; i < g; ++i) idx[i] = i;
    while (true) {
      group.push_back({idx});
      int i = g - 1;
      while (i >= 0 && idx[i] == s - g + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < g; ++j) idx[j] = idx[j - 1] + 1;
    }
    groups.push_back(std::move(group));
  }
  return groups;
}

std::vector<int> ClipCombination(const Combination& combo, int part_count) {
  std::vector<int> out;
  for (int id : combo.part_ids) {
    if (id < part_count) out.push_back(id);
  }
  return out;
}

PixelSet RevealedPixels(const ProcessQueue& queue, const UpdatedArray& updated,
                        const Combination& combo, int width, int height) {
  PixelSet keep(width, height);
  for (size_t i = 0; i < queue.size(); ++i) {
    const QueueEntry& e = queue.entries[i];
    if (e.status != EntryStatus::kActive) {
      for (const Box& b : e.active_region) keep.InsertBox(b);
    } else if (updated[i] != -1) {
      for (const Part& p : e.parts) keep.InsertBox(p.region);
    } else {
      for (int id : ClipCombination(combo, static_cast<int>(e.parts.size()))) {
        keep.InsertBox(e.parts[id].region);
      }
    }
  }
  return keep;
}

Raster GenerateMutant(const ProcessQueue& queue, const UpdatedArray& updated,
                      const Combination& combo, const Raster& image,
                      Rgb mask_value) {
  if (queue.size() == 0) {
    throw std::invalid_argument("cannot build a mutant from an empty queue");
  }
  return ApplyMask(image,
                   RevealedPixels(queue, updated, combo, image.width(),
                                  image.height()),
                   mask_value);
}

PixelSet RetainedPixels(const ProcessQueue& queue, int width, int height) {
  PixelSet keep(width, height);
  for (const QueueEntry& e : queue.entries) {
    if (e.status == EntryStatus::kActive) {
      for (const Part& p : e.parts) keep.InsertBox(p.region);
    } else {
      for (const Box& b : e.active_region) keep.InsertBox(b);
    }
  }
  return keep;
}

void Prune(const Detections& preds, const Detections& targets,
           UpdatedArray& updated, ProcessQueue& queue, const Combination& combo,
           int combo_index, double iou_threshold) {
  for (size_t t = 0; t < targets.size() && t < queue.size(); ++t) {
    QueueEntry& e = queue.entries[t];
    if (e.status != EntryStatus::kActive || updated[t] != -1) continue;
    const std::vector<int> ids =
        ClipCombination(combo, static_cast<int>(e.parts.size()));
    // Nothing of this detection was revealed; a match would carry no
    // information about its parts.
    if (ids.empty()) continue;
    const auto match = BestMatch(preds, targets[t], iou_threshold);
    if (!match) continue;

    updated.Set(t, combo_index);
    std::vector<Part> kept;
    for (int id : ids) kept.push_back(e.parts[id]);
    e.parts = std::move(kept);
    e.passing = ids;
    if (auto clipped = Intersect(preds[*match].box, e.original.box)) {
      e.current_box = *clipped;
    }
  }
}

}  // namespace yorex
