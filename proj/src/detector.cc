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

#include "yorex/detector.h"

#include <algorithm>

namespace yorex {

std::optional<size_t> BestMatch(const Detections& preds, const Detection& target,
                                double iou_threshold) {
  std::optional<size_t> best;
  double best_iou = -1.0;
  for (size_t i = 0; i < preds.size(); ++i) {
    if (preds[i].label != target.label) continue;
    const double iou = Iou(preds[i].box, target.box);
    if (iou > best_iou) {
      best_iou = iou;
      best = i;
    }
  }
  if (best && best_iou >= iou_threshold) return best;
  return std::nullopt;
}

const char* PhaseName(QueryPhase phase) {
  switch (phase) {
    case QueryPhase::kInitial:
      return "initial";
    case QueryPhase::kLevelSearch:
      return "level_search";
    case QueryPhase::kExtraction:
      return "extraction";
  }
  return "unknown";
}

int64_t& QueryLedger::operator[](QueryPhase phase) {
  switch (phase) {
    case QueryPhase::kInitial:
      return initial;
    case QueryPhase::kLevelSearch:
      return level_search;
    case QueryPhase::kExtraction:
      break;
  }
  return extraction;
}

QueryLedger& QueryLedger::operator+=(const QueryLedger& other) {
  initial += other.initial;
  level_search += other.level_search;
  extraction += other.extraction;
  return *this;
}

std::vector<Detections> CountingDetector::DetectBatch(
    std::span<const Raster> images) {
  std::vector<Detections> out;
  out.reserve(images.size());
  const size_t chunk = max_batch_ == 0 ? std::max<size_t>(images.size(), 1)
                                       : max_batch_;
  for (size_t start = 0; start < images.size(); start += chunk) {
    const auto part = images.subspan(start, std::min(chunk, images.size() - start));
    {
      // Charged on submission: a batch that fails midway was still sent.
      std::lock_guard<std::mutex> lock(mu_);
      ledger_[phase_] += static_cast<int64_t>(part.size());
      ++batches_;
    }
    auto results = inner_.DetectBatch(part);
    if (results.size() != part.size()) {
      throw ProtocolError("detector returned " + std::to_string(results.size()) +
                          " result lists for " + std::to_string(part.size()) +
                          " images");
    }
    for (auto& r : results) out.push_back(std::move(r));
  }
  return out;
}

QueryLedger CountingDetector::ledger() const {
  std::lock_guard<std::mutex> lock(mu_);
  return ledger_;
}

int64_t CountingDetector::batches() const {
  std::lock_guard<std::mutex> lock(mu_);
  return batches_;
}

}  // namespace yorex
