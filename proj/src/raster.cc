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

#include "yorex/raster.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace yorex {

std::string Box::ToString() const {
  std::ostringstream out;
  out << "[" << x0 << "," << y0 << "," << x1 << "," << y1 << ")";
  return out.str();
}

std::optional<Box> Intersect(const Box& a, const Box& b) {
  Box r{std::max(a.x0, b.x0), std::max(a.y0, b.y0), std::min(a.x1, b.x1),
        std::min(a.y1, b.y1)};
  if (r.empty()) return std::nullopt;
  return r;
}

Box Enclose(const Box& a, const Box& b) {
  return {std::min(a.x0, b.x0), std::min(a.y0, b.y0), std::max(a.x1, b.x1),
          std::max(a.y1, b.y1)};
}

double Iou(const Box& a, const Box& b) {
  const auto inter = Intersect(a, b);
  if (!inter) return 0.0;
  const double i = static_cast<double>(inter->area());
  const double u = static_cast<double>(a.area() + b.area()) - i;
  return u > 0 ? i / u : 0.0;
}

Box EnclosingBox(double x0, double y0, double x1, double y1) {
  return {static_cast<int>(std::floor(x0)), static_cast<int>(std::floor(y0)),
          static_cast<int>(std::ceil(x1)), static_cast<int>(std::ceil(y1))};
}

namespace {

void CheckDims(int width, int height) {
  if (width < 1 || height < 1) {
    throw std::invalid_argument("raster dimensions must be positive, got " +
                                std::to_string(width) + "x" +
                                std::to_string(height));
  }
}

}  // namespace

Raster::Raster(int width, int height, Rgb fill)
    : width_(width), height_(height) {
  CheckDims(width, height);
  data_.resize(static_cast<size_t>(width) * height * 3);
  for (size_t i = 0; i < data_.size(); i += 3) {
    data_[i] = fill.r;
    data_[i + 1] = fill.g;
    data_[i + 2] = fill.b;
  }
}

Raster Raster::FromBytes(int width, int height, std::vector<uint8_t> data) {
  CheckDims(width, height);
  if (data.size() != static_cast<size_t>(width) * height * 3) {
    throw std::invalid_argument("raster data has " + std::to_string(data.size()) +
                                " bytes, expected " +
                                std::to_string(size_t{3} * width * height));
  }
  Raster out(width, height);
  out.data_ = std::move(data);
  return out;
}

void Raster::Fill(const Box& box, Rgb c) {
  const auto clipped = Intersect(box, bounds());
  if (!clipped) return;
  for (int y = clipped->y0; y < clipped->y1; ++y) {
    for (int x = clipped->x0; x < clipped->x1; ++x) set(x, y, c);
  }
}

Raster Raster::Crop(const Box& box) const {
  if (!box.FitsIn(width_, height_)) {
    throw std::invalid_argument("crop box " + box.ToString() +
                                " does not fit the image");
  }
  std::vector<uint8_t> out;
  out.reserve(static_cast<size_t>(box.area()) * 3);
  for (int y = box.y0; y < box.y1; ++y) {
    const auto row = data_.begin() + Offset(box.x0, y);
    out.insert(out.end(), row, row + box.width() * 3);
  }
  return FromBytes(box.width(), box.height(), std::move(out));
}

PixelSet::PixelSet(int width, int height) : width_(width), height_(height) {
  if (width < 0 || height < 0) {
    throw std::invalid_argument("pixel set dimensions must be non-negative");
  }
  words_.assign((static_cast<size_t>(width) * height + 63) / 64, 0);
}

PixelSet PixelSet::Full(int width, int height) {
  PixelSet s(width, height);
  std::fill(s.words_.begin(), s.words_.end(), ~uint64_t{0});
  s.ClearPadding();
  return s;
}

PixelSet PixelSet::FromBox(int width, int height, const Box& box) {
  PixelSet s(width, height);
  s.InsertBox(box);
  return s;
}

void PixelSet::InsertBox(const Box& box) {
  const auto clipped = Intersect(box, Box{0, 0, width_, height_});
  if (!clipped) return;
  for (int y = clipped->y0; y < clipped->y1; ++y) {
    for (int x = clipped->x0; x < clipped->x1; ++x) Insert(x, y);
  }
}

int64_t PixelSet::Count() const {
  int64_t n = 0;
  for (uint64_t w : words_) n += std::popcount(w);
  return n;
}

std::optional<Box> PixelSet::BoundingBox() const {
  Box b{width_, height_, 0, 0};
  bool any = false;
  for (int y = 0; y < height_; ++y) {
    for (int x = 0; x < width_; ++x) {
      if (!Contains(x, y)) continue;
      any = true;
      b.x0 = std::min(b.x0, x);
      b.y0 = std::min(b.y0, y);
      b.x1 = std::max(b.x1, x + 1);
      b.y1 = std::max(b.y1, y + 1);
    }
  }
  if (!any) return std::nullopt;
  return b;
}

void PixelSet::CheckSameFrame(const PixelSet& other) const {
  if (width_ != other.width_ || height_ != other.height_) {
    throw std::invalid_argument("pixel set frames differ");
  }
}

void PixelSet::ClearPadding() {
  const size_t bits = static_cast<size_t>(width_) * height_;
  if (bits % 64 != 0 && !words_.empty()) {
    words_.back() &= (uint64_t{1} << (bits % 64)) - 1;
  }
}

PixelSet& PixelSet::operator|=(const PixelSet& other) {
  CheckSameFrame(other);
  for (size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

PixelSet& PixelSet::operator&=(const PixelSet& other) {
  CheckSameFrame(other);
  for (size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

PixelSet PixelSet::Complement() const {
  PixelSet out = *this;
  for (uint64_t& w : out.words_) w = ~w;
  out.ClearPadding();
  return out;
}

bool PixelSet::IsSubsetOf(const PixelSet& other) const {
  CheckSameFrame(other);
  for (size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] & ~other.words_[i]) return false;
  }
  return true;
}

PixelSet operator|(PixelSet a, const PixelSet& b) { return a |= b; }
PixelSet operator&(PixelSet a, const PixelSet& b) { return a &= b; }

Raster ApplyMask(const Raster& image, const PixelSet& keep, Rgb mask_value) {
  if (keep.width() != image.width() || keep.height() != image.height()) {
    throw std::invalid_argument("mask frame " + std::to_string(keep.width()) +
                                "x" + std::to_string(keep.height()) +
                                " does not match image " +
                                std::to_string(image.width()) + "x" +
                                std::to_string(image.height()));
  }
  Raster out = image;
  for (int y = 0; y < image.height(); ++y) {
    for (int x = 0; x < image.width(); ++x) {
      if (!keep.Contains(x, y)) out.set(x, y, mask_value);
    }
  }
  return out;
}

}  // namespace yorex
