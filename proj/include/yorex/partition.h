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

// Random rectilinear partitioning of an active region and refinement of the
// region from the parts that passed a level.

#ifndef YOREX_PARTITION_H_
#define YOREX_PARTITION_H_

#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "yorex/raster.h"

namespace yorex {

using Rng = std::mt19937_64;

// Distribution of interior split coordinates.
struct SplitDistribution {
  enum class Kind { kUniform, kBetaBinomial };

  Kind kind = Kind::kUniform;
  double alpha = 1.0;
  double beta = 1.0;

  static SplitDistribution Uniform() { return {}; }
  static SplitDistribution BetaBinomial(double alpha, double beta);
  // Parses "uniform" or "betabin:A,B".
  static SplitDistribution Parse(const std::string& text);
  std::string ToString() const;

  // Draws a split coordinate in [lo + 1, hi - 1], i.e. strictly inside the
  // half-open span [lo, hi). Requires hi - lo >= 2.
  int DrawInterior(int lo, int hi, Rng& rng) const;
};

struct Part {
  Box region;
  int owner = 0;  // detection index
  int id = 0;     // ordinal within the owner's partition

  bool operator==(const Part&) const = default;
};

// Per-detection partitions of one refinement level.
struct PartitionSet {
  std::vector<std::vector<Part>> parts;
  uint64_t seed = 0;
};

// Tiles `active` with min(parts, area) disjoint rectangles. With four parts
// and a region at least 2x2, a single interior point yields four quadrants;
// otherwise the largest splittable leaf is cut in two, alternating axes, until
// enough leaves exist. Throws std::invalid_argument when parts < 2 or the box
// is empty.
std::vector<Part> RandomPartition(const Box& active, int parts,
                                  const SplitDistribution& dist, Rng& rng,
                                  int owner = 0);

// Partitions a region made of disjoint rectangles into at most `parts` parts.
// Every rectangle keeps at least one part; the remaining budget goes to the
// rectangles with the most pixels per part, and each rectangle is then split
// with RandomPartition. Part ids are assigned in rectangle order.
std::vector<Part> PartitionRegion(std::span<const Box> region, int parts,
                                  const SplitDistribution& dist, Rng& rng,
                                  int owner = 0);

struct RefineResult {
  bool done = false;
  // Union of the passing parts, as disjoint rectangles.
  std::vector<Box> next_region;
};

// Next active region from the parts that passed; done once every passing part
// has at most `min_region` pixels.
RefineResult Refine(std::span<const Part> passing, int64_t min_region);

// Deterministic child seed (splitmix64 chain) so the seed of a partition only
// depends on its coordinates in the search, not on evaluation order.
uint64_t DeriveSeed(uint64_t master, std::initializer_list<uint64_t> path);

int64_t TotalArea(std::span<const Box> region);

}  // namespace yorex

#endif  // YOREX_PARTITION_H_
