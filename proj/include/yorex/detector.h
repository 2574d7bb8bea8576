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

// The black-box boundary. Everything the engine knows about a model comes
// through Detector::DetectBatch.

#ifndef YOREX_DETECTOR_H_
#define YOREX_DETECTOR_H_

#include <cstdint>
#include <mutex>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "yorex/detection.h"
#include "yorex/raster.h"

namespace yorex {

// Base of every failure raised while talking to a detector.
class DetectorError : public std::runtime_error {
 public:
  DetectorError(const std::string& what, bool retryable)
      : std::runtime_error(what), retryable_(retryable) {}
  bool retryable() const { return retryable_; }

 private:
  bool retryable_;
};

// No response within the deadline. The only retryable failure.
class TimeoutError : public DetectorError {
 public:
  explicit TimeoutError(const std::string& what) : DetectorError(what, true) {}
};

// The peer went away or the stream broke.
class TransportError : public DetectorError {
 public:
  explicit TransportError(const std::string& what)
      : DetectorError(what, false) {}
};

// Malformed message, id mismatch or misaligned batch.
class ProtocolError : public DetectorError {
 public:
  explicit ProtocolError(const std::string& what)
      : DetectorError(what, false) {}
};

// The detector answered a request with an explicit error message.
class RemoteError : public DetectorError {
 public:
  explicit RemoteError(const std::string& what) : DetectorError(what, false) {}
};

class Detector {
 public:
  virtual ~Detector() = default;

  // One detection list per image, in input order.
  virtual std::vector<Detections> DetectBatch(std::span<const Raster> images) = 0;

  Detections Detect(const Raster& image) {
    auto out = DetectBatch(std::span<const Raster>(&image, 1));
    return std::move(out.at(0));
  }
};

enum class QueryPhase { kInitial, kLevelSearch, kExtraction };

const char* PhaseName(QueryPhase phase);

struct QueryLedger {
  int64_t initial = 0;
  int64_t level_search = 0;
  int64_t extraction = 0;

  int64_t total() const { return initial + level_search + extraction; }
  int64_t& operator[](QueryPhase phase);
  QueryLedger& operator+=(const QueryLedger& other);
  bool operator==(const QueryLedger&) const = default;
};

// Forwards to another detector and charges every image to the current phase.
// Images are sent in chunks of at most `max_batch` (0 = unlimited).
class CountingDetector : public Detector {
 public:
  explicit CountingDetector(Detector& inner, size_t max_batch = 0)
      : inner_(inner), max_batch_(max_batch) {}

  std::vector<Detections> DetectBatch(std::span<const Raster> images) override;

  void set_phase(QueryPhase phase) { phase_ = phase; }
  QueryPhase phase() const { return phase_; }
  QueryLedger ledger() const;
  int64_t batches() const;

 private:
  Detector& inner_;
  size_t max_batch_;
  QueryPhase phase_ = QueryPhase::kInitial;
  mutable std::mutex mu_;
  QueryLedger ledger_;
  int64_t batches_ = 0;
};

// Switches a CountingDetector to a phase for the lifetime of the scope.
class PhaseScope {
 public:
  PhaseScope(CountingDetector& detector, QueryPhase phase)
      : detector_(detector), previous_(detector.phase()) {
    detector_.set_phase(phase);
  }
  ~PhaseScope() { detector_.set_phase(previous_); }
  PhaseScope(const PhaseScope&) = delete;
  PhaseScope& operator=(const PhaseScope&) = delete;

 private:
  CountingDetector& detector_;
  QueryPhase previous_;
};

}  // namespace yorex

#endif  // YOREX_DETECTOR_H_
