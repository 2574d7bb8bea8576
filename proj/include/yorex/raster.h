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

// Image buffers, integer box geometry and pixel sets. Everything the search
// manipulates is expressed with these three types.

#ifndef YOREX_RASTER_H_
#define YOREX_RASTER_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace yorex {

struct Rgb {
  uint8_t r = 0;
  uint8_t g = 0;
  uint8_t b = 0;

  bool operator==(const Rgb&) const = default;
};

inline constexpr Rgb kBlack{0, 0, 0};

// Half-open pixel rectangle: [x0, x1) x [y0, y1).
struct Box {
  int x0 = 0;
  int y0 = 0;
  int x1 = 0;
  int y1 = 0;

  int width() const { return x1 - x0; }
  int height() const { return y1 - y0; }
  int64_t area() const {
    return empty() ? 0 : static_cast<int64_t>(width()) * height();
  }
  bool empty() const { return x1 <= x0 || y1 <= y0; }
  bool Contains(int x, int y) const {
    return x >= x0 && x < x1 && y >= y0 && y < y1;
  }
  bool Contains(const Box& other) const {
    return other.x0 >= x0 && other.y0 >= y0 && other.x1 <= x1 &&
           other.y1 <= y1;
  }
  // True when the box is non-empty and lies inside a width x height frame.
  bool FitsIn(int frame_width, int frame_height) const {
    return !empty() && x0 >= 0 && y0 >= 0 && x1 <= frame_width &&
           y1 <= frame_height;
  }

  bool operator==(const Box&) const = default;
  std::string ToString() const;
};

// Returns the overlap of two boxes, or nullopt when they are disjoint.
std::optional<Box> Intersect(const Box& a, const Box& b);

// Smallest box containing both.
Box Enclose(const Box& a, const Box& b);

// Intersection over union; 0 for disjoint boxes.
double Iou(const Box& a, const Box& b);

// Rounds fractional detector coordinates outward to the enclosing integer box.
Box EnclosingBox(double x0, double y0, double x1, double y1);

// Interleaved 8-bit RGB image, row-major.
class Raster {
 public:
  Raster(int width, int height, Rgb fill = kBlack);
  // Takes ownership of `data`; throws std::invalid_argument when its size is
  // not width * height * 3.
  static Raster FromBytes(int width, int height, std::vector<uint8_t> data);

  int width() const { return width_; }
  int height() const { return height_; }
  Box bounds() const { return {0, 0, width_, height_}; }

  Rgb at(int x, int y) const {
    const uint8_t* p = &data_[Offset(x, y)];
    return {p[0], p[1], p[2]};
  }
  void set(int x, int y, Rgb c) {
    uint8_t* p = &data_[Offset(x, y)];
    p[0] = c.r;
    p[1] = c.g;
    p[2] = c.b;
  }
  void Fill(const Box& box, Rgb c);

  std::span<const uint8_t> data() const { return data_; }
  std::span<uint8_t> mutable_data() { return data_; }

  // Copy of the sub-image under `box` (must fit).
  Raster Crop(const Box& box) const;

  bool operator==(const Raster&) const = default;

 private:
  size_t Offset(int x, int y) const {
    return (static_cast<size_t>(y) * width_ + x) * 3;
  }

  int width_;
  int height_;
  std::vector<uint8_t> data_;
};

// Single-channel 8-bit image (heatmaps, landscapes, masks).
struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<uint8_t> pixels;

  GrayImage() = default;
  GrayImage(int w, int h, uint8_t fill = 0)
      : width(w), height(h), pixels(static_cast<size_t>(w) * h, fill) {}

  uint8_t at(int x, int y) const {
    return pixels[static_cast<size_t>(y) * width + x];
  }
  uint8_t& at(int x, int y) { return pixels[static_cast<size_t>(y) * width + x]; }

  bool operator==(const GrayImage&) const = default;
};

// A set of pixels of a fixed width x height frame, stored as a bitset.
class PixelSet {
 public:
  PixelSet(int width, int height);

  static PixelSet Full(int width, int height);
  static PixelSet FromBox(int width, int height, const Box& box);

  int width() const { return width_; }
  int height() const { return height_; }

  bool Contains(int x, int y) const {
    const size_t i = Index(x, y);
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }
  void Insert(int x, int y) {
    const size_t i = Index(x, y);
    words_[i >> 6] |= uint64_t{1} << (i & 63);
  }
  void Erase(int x, int y) {
    const size_t i = Index(x, y);
    words_[i >> 6] &= ~(uint64_t{1} << (i & 63));
  }
  // Inserts the part of `box` that lies inside the frame.
  void InsertBox(const Box& box);

  int64_t Count() const;
  bool Empty() const { return Count() == 0; }
  // Tight bounding box of the members; nullopt for the empty set.
  std::optional<Box> BoundingBox() const;

  PixelSet& operator|=(const PixelSet& other);
  PixelSet& operator&=(const PixelSet& other);
  PixelSet Complement() const;
  bool IsSubsetOf(const PixelSet& other) const;

  bool operator==(const PixelSet&) const = default;

 private:
  size_t Index(int x, int y) const {
    return static_cast<size_t>(y) * width_ + x;
  }
  void CheckSameFrame(const PixelSet& other) const;
  void ClearPadding();

  int width_;
  int height_;
  std::vector<uint64_t> words_;
};

PixelSet operator|(PixelSet a, const PixelSet& b);
PixelSet operator&(PixelSet a, const PixelSet& b);

// Copy of `image` where every pixel outside `keep` is replaced by
// `mask_value`. Throws std::invalid_argument on a frame mismatch.
Raster ApplyMask(const Raster& image, const PixelSet& keep, Rgb mask_value);

}  // namespace yorex

#endif  // YOREX_RASTER_H_
