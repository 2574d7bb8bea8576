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

#ifndef YOREX_REPORT_H_
#define YOREX_REPORT_H_

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "yorex/engine.h"
#include "yorex/raster.h"

namespace yorex {

// Run-length code of a pixel set restricted to a box: box-local row-major
// scan, alternating run lengths that start with an unset run (possibly 0).
struct RleMask {
  Box box;
  std::vector<int64_t> counts;

  bool operator==(const RleMask&) const = default;
};

RleMask EncodeRle(const PixelSet& pixels, const Box& box);
// Throws std::invalid_argument when the runs do not cover the box exactly.
PixelSet DecodeRle(const RleMask& rle, int width, int height);

// 0/255 mask over the full frame.
GrayImage MaskImage(const PixelSet& pixels);

// The run report as one JSON document. Wall time is left out when
// `include_timing` is false, which makes reports of identical runs
// byte-identical.
nlohmann::ordered_json ReportToJson(const ExplainResult& result,
                                    bool include_timing = true);

// Writes report.json, explanation_<i>.png, landscape_<i>.png and
// landscape_sum.png into `dir` (created if missing).
void WriteRunArtifacts(const ExplainResult& result, const std::string& dir);

}  // namespace yorex

#endif  // YOREX_REPORT_H_
