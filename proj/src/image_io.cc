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

#include "yorex/image_io.h"

#include <png.h>

#include <array>
#include <cctype>
#include <cstring>
#include <fstream>
#include <iterator>
#include <utility>
#include <vector>

namespace yorex {
namespace {

std::vector<uint8_t> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ImageIoError("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

bool IsPng(const std::vector<uint8_t>& bytes) {
  static constexpr std::array<uint8_t, 8> kSig = {0x89, 'P', 'N', 'G',
                                                  '\r', '\n', 0x1a, '\n'};
  return bytes.size() >= kSig.size() &&
         std::equal(kSig.begin(), kSig.end(), bytes.begin());
}

// Decodes into the requested simplified-API format. Only 8-bit sources are
// accepted so no gamma conversion ever happens.
std::vector<uint8_t> DecodePng(const std::vector<uint8_t>& bytes,
                               const std::string& path, uint32_t format,
                               int* width, int* height,
                               uint32_t* source_format) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size())) {
    throw ImageIoError(path + ": " + image.message);
  }
  if (image.format & PNG_FORMAT_FLAG_LINEAR) {
    png_image_free(&image);
    throw ImageIoError(path + ": 16-bit PNGs are not supported");
  }
  *source_format = image.format;
  image.format = format;
  std::vector<uint8_t> out(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, out.data(), 0, nullptr)) {
    const std::string msg = image.message;
    png_image_free(&image);
    throw ImageIoError(path + ": " + msg);
  }
  *width = static_cast<int>(image.width);
  *height = static_cast<int>(image.height);
  return out;
}

// Minimal P6 reader: magic, width, height, maxval separated by whitespace or
// comments, then one whitespace byte and the raster.
Raster DecodePpm(const std::vector<uint8_t>& bytes, const std::string& path) {
  size_t pos = 2;
  auto next_int = [&]() {
    while (pos < bytes.size()) {
      if (bytes[pos] == '#') {
        while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
      } else if (std::isspace(bytes[pos])) {
        ++pos;
      } else {
        break;
      }
    }
    if (pos >= bytes.size() || !std::isdigit(bytes[pos])) {
      throw ImageIoError(path + ": malformed PPM header");
    }
    long v = 0;
    while (pos < bytes.size() && std::isdigit(bytes[pos])) {
      v = v * 10 + (bytes[pos++] - '0');
      if (v > (1 << 24)) throw ImageIoError(path + ": PPM header value too large");
    }
    return static_cast<int>(v);
  };
  const int width = next_int();
  const int height = next_int();
  const int maxval = next_int();
  if (maxval != 255) throw ImageIoError(path + ": only maxval 255 is supported");
  if (pos >= bytes.size() || !std::isspace(bytes[pos])) {
    throw ImageIoError(path + ": malformed PPM header");
  }
  ++pos;
  const size_t need = static_cast<size_t>(width) * height * 3;
  if (width < 1 || height < 1 || bytes.size() - pos < need) {
    throw ImageIoError(path + ": truncated PPM data");
  }
  return Raster::FromBytes(width, height,
                std::vector<uint8_t>(bytes.begin() + pos,
                                     bytes.begin() + pos + need));
}

void EncodePng(const std::string& path, int width, int height,
               uint32_t format, const uint8_t* data) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(width);
  image.height = static_cast<png_uint_32>(height);
  image.format = format;
  if (!png_image_write_to_file(&image, path.c_str(), 0, data, 0, nullptr)) {
    throw ImageIoError(path + ": " + image.message);
  }
}

}  // namespace

Raster ReadImage(const std::string& path) {
  const auto bytes = ReadFile(path);
  if (IsPng(bytes)) {
    int w = 0, h = 0;
    uint32_t src = 0;
    auto rgb = DecodePng(bytes, path, PNG_FORMAT_RGB, &w, &h, &src);
    return Raster::FromBytes(w, h, std::move(rgb));
  }
  if (bytes.size() >= 2 && bytes[0] == 'P' && bytes[1] == '6') {
    return DecodePpm(bytes, path);
  }
  throw ImageIoError(path + ": unrecognized image format (expected PNG or P6)");
}

GrayImage ReadGrayImage(const std::string& path) {
  const auto bytes = ReadFile(path);
  if (IsPng(bytes)) {
    int w = 0, h = 0;
    uint32_t src = 0;
    auto rgb = DecodePng(bytes, path, PNG_FORMAT_RGB, &w, &h, &src);
    GrayImage out(w, h);
    const bool gray = (src & PNG_FORMAT_FLAG_COLOR) == 0;
    for (size_t i = 0; i < out.pixels.size(); ++i) {
      const uint8_t* p = &rgb[i * 3];
      out.pixels[i] = gray ? p[0]
                           : static_cast<uint8_t>((299 * p[0] + 587 * p[1] +
                                                   114 * p[2] + 500) /
                                                  1000);
    }
    return out;
  }
  const Raster rgb = ReadImage(path);
  GrayImage out(rgb.width(), rgb.height());
  for (int y = 0; y < rgb.height(); ++y) {
    for (int x = 0; x < rgb.width(); ++x) {
      const Rgb c = rgb.at(x, y);
      out.at(x, y) =
          static_cast<uint8_t>((299 * c.r + 587 * c.g + 114 * c.b + 500) / 1000);
    }
  }
  return out;
}

void WritePng(const std::string& path, const Raster& image) {
  EncodePng(path, image.width(), image.height(), PNG_FORMAT_RGB,
            image.data().data());
}

void WritePng(const std::string& path, const GrayImage& image) {
  EncodePng(path, image.width, image.height, PNG_FORMAT_GRAY,
            image.pixels.data());
}

void WritePpm(const std::string& path, const Raster& image) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ImageIoError("cannot write " + path);
  out << "P6\n" << image.width() << " " << image.height() << "\n255\n";
  out.write(reinterpret_cast<const char*>(image.data().data()),
            static_cast<std::streamsize>(image.data().size()));
  if (!out) throw ImageIoError("short write to " + path);
}

}  // namespace yorex
