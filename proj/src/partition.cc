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

#include "yorex/partition.h"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace yorex {

SplitDistribution SplitDistribution::BetaBinomial(double alpha, double beta) {
  if (!(alpha > 0) || !(beta > 0)) {
    throw std::invalid_argument("beta-binomial parameters must be positive");
  }
  return {Kind::kBetaBinomial, alpha, beta};
}

SplitDistribution SplitDistribution::Parse(const std::string& text) {
  if (text == "uniform") return Uniform();
  const std::string prefix = "betabin:";
  if (text.rfind(prefix, 0) == 0) {
    const std::string args = text.substr(prefix.size());
    const auto comma = args.find(',');
    if (comma == std::string::npos) {
      throw std::invalid_argument("expected betabin:A,B, got '" + text + "'");
    }
    try {
      size_t used_a = 0, used_b = 0;
      const std::string a_text = args.substr(0, comma);
      const std::string b_text = args.substr(comma + 1);
      const double a = std::stod(a_text, &used_a);
      const double b = std::stod(b_text, &used_b);
      if (used_a != a_text.size() || used_b != b_text.size()) {
        throw std::invalid_argument("trailing characters");
      }
      return BetaBinomial(a, b);
    } catch (const std::logic_error&) {
      throw std::invalid_argument("expected betabin:A,B, got '" + text + "'");
    }
  }
  throw std::invalid_argument("unknown distribution '" + text + "'");
}

std::string SplitDistribution::ToString() const {
  if (kind == Kind::kUniform) return "uniform";
  std::ostringstream out;
  out << "betabin:" << alpha << "," << beta;
  return out.str();
}

int SplitDistribution::DrawInterior(int lo, int hi, Rng& rng) const {
  if (hi - lo < 2) throw std::invalid_argument("span too small to split");
  if (kind == Kind::kUniform) {
    return std::uniform_int_distribution<int>(lo + 1, hi - 1)(rng);
  }
  // Beta-binomial over the hi - lo - 1 interior positions.
  const int trials = hi - lo - 2;
  std::gamma_distribution<double> ga(alpha, 1.0);
  std::gamma_distribution<double> gb(beta, 1.0);
  const double x = ga(rng);
  const double y = gb(rng);
  const double p = (x + y) > 0 ? x / (x + y) : 0.5;
  const int k = trials == 0 ? 0 : std::binomial_distribution<int>(trials, p)(rng);
  return lo + 1 + k;
}

namespace {

struct Leaf {
  Box box;
  int depth = 0;
};

}  // namespace

std::vector<Part> RandomPartition(const Box& active, int parts,
                                  const SplitDistribution& dist, Rng& rng,
                                  int owner) {
  if (parts < 2) {
    throw std::invalid_argument("a partition needs at least 2 parts, got " +
                                std::to_string(parts));
  }
  if (active.empty()) {
    throw std::invalid_argument("cannot partition empty box " +
                                active.ToString());
  }
  const int64_t target = std::min<int64_t>(parts, active.area());

  std::vector<Leaf> leaves;
  if (parts == 4 && active.width() >= 2 && active.height() >= 2) {
    const int cx = dist.DrawInterior(active.x0, active.x1, rng);
    const int cy = dist.DrawInterior(active.y0, active.y1, rng);
    leaves = {{{active.x0, active.y0, cx, cy}, 1},
              {{cx, active.y0, active.x1, cy}, 1},
              {{active.x0, cy, cx, active.y1}, 1},
              {{cx, cy, active.x1, active.y1}, 1}};
  } else {
    leaves = {{active, 0}};
    while (static_cast<int64_t>(leaves.size()) < target) {
      // Largest leaf first; every leaf with two or more pixels can be cut.
      auto it = std::max_element(
          leaves.begin(), leaves.end(), [](const Leaf& a, const Leaf& b) {
            return a.box.area() < b.box.area();
          });
      const Leaf leaf = *it;
      bool vertical = leaf.depth % 2 == 0;
      if (vertical && leaf.box.width() < 2) vertical = false;
      if (!vertical && leaf.box.height() < 2) vertical = true;
      Leaf first = leaf, second = leaf;
      first.depth = second.depth = leaf.depth + 1;
      if (vertical) {
        const int c = dist.DrawInterior(leaf.box.x0, leaf.box.x1, rng);
        first.box.x1 = c;
        second.box.x0 = c;
      } else {
        const int c = dist.DrawInterior(leaf.box.y0, leaf.box.y1, rng);
        first.box.y1 = c;
        second.box.y0 = c;
      }
      *it = first;
      leaves.insert(it + 1, second);
    }
  }

  std::vector<Part> out;
  out.reserve(leaves.size());
  for (const Leaf& leaf : leaves) {
    out.push_back({leaf.box, owner, static_cast<int>(out.size())});
  }
  return out;
}

std::vector<Part> PartitionRegion(std::span<const Box> region, int parts,
                                  const SplitDistribution& dist, Rng& rng,
                                  int owner) {
  if (parts < 2) {
    throw std::invalid_argument("a partition needs at least 2 parts, got " +
                                std::to_string(parts));
  }
  if (region.empty()) throw std::invalid_argument("cannot partition empty region");
  if (region.size() == 1) return RandomPartition(region[0], parts, dist, rng, owner);

  std::vector<int> quota(region.size(), 1);
  int remaining = parts - static_cast<int>(region.size());
  while (remaining > 0) {
    int best = -1;
    double best_density = 0;
    for (size_t i = 0; i < region.size(); ++i) {
      if (quota[i] >= region[i].area()) continue;
      const double density = static_cast<double>(region[i].area()) / quota[i];
      if (density > best_density) {
        best_density = density;
        best = static_cast<int>(i);
      }
    }
    if (best < 0) break;
    ++quota[best];
    --remaining;
  }

  std::vector<Part> out;
  for (size_t i = 0; i < region.size(); ++i) {
    if (quota[i] == 1) {
      out.push_back({region[i], owner, 0});
    } else {
      for (Part& p : RandomPartition(region[i], quota[i], dist, rng, owner)) {
        out.push_back(p);
      }
    }
  }
  for (size_t i = 0; i < out.size(); ++i) out[i].id = static_cast<int>(i);
  return out;
}

RefineResult Refine(std::span<const Part> passing, int64_t min_region) {
  RefineResult result;
  result.done = true;
  for (const Part& p : passing) {
    result.next_region.push_back(p.region);
    if (p.region.area() > min_region) result.done = false;
  }
  return result;
}

uint64_t DeriveSeed(uint64_t master, std::initializer_list<uint64_t> path) {
  auto mix = [](uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  uint64_t h = mix(master);
  for (uint64_t step : path) h = mix(h ^ mix(step));
  return h;
}

int64_t TotalArea(std::span<const Box> region) {
  int64_t total = 0;
  for (const Box& b : region) total += b.area();
  return total;
}

}  // namespace yorex
