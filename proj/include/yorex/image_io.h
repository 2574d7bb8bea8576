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

#ifndef YOREX_IMAGE_IO_H_
#define YOREX_IMAGE_IO_H_

#include <stdexcept>
#include <string>

#include "yorex/raster.h"

namespace yorex {

class ImageIoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Reads an 8-bit PNG or a binary PPM (P6, maxval 255). The format is chosen by
// the file signature. Alpha is dropped; grayscale is expanded to RGB.
Raster ReadImage(const std::string& path);

// Reads a heatmap as one channel. Gray PNGs are taken as-is; RGB inputs are
// reduced with integer Rec.601 luma.
GrayImage ReadGrayImage(const std::string& path);

void WritePng(const std::string& path, const Raster& image);
void WritePng(const std::string& path, const GrayImage& image);
void WritePpm(const std::string& path, const Raster& image);

}  // namespace yorex

#endif  // YOREX_IMAGE_IO_H_
