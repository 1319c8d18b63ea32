// Copyright 2026 The view-forge Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "viewforge/core/raster.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "viewforge/error.hpp"

namespace viewforge {
namespace {

void check_dims(int width, int height, int channels) {
  if (width < 1 || height < 1) {
    throw GeometryError("image dimensions must be positive, got " + std::to_string(width) +
                        "x" + std::to_string(height));
  }
  if (channels != 1 && channels != 3) {
    throw GeometryError("images carry 1 or 3 channels, got " + std::to_string(channels));
  }
}

}  // namespace

RasterImage::RasterImage(int width, int height, int channels, std::uint8_t fill)
    : width_(width), height_(height), channels_(channels) {
  check_dims(width, height, channels);
  data_.assign(pixel_count() * channels, fill);
}

RasterImage::RasterImage(int width, int height, int channels, std::vector<std::uint8_t> data)
    : width_(width), height_(height), channels_(channels), data_(std::move(data)) {
  check_dims(width, height, channels);
  if (data_.size() != pixel_count() * static_cast<std::size_t>(channels)) {
    throw GeometryError("image buffer has " + std::to_string(data_.size()) +
                        " samples, expected " +
                        std::to_string(pixel_count() * static_cast<std::size_t>(channels)));
  }
}

FloatImage::FloatImage(int width, int height, int channels, double fill)
    : width_(width), height_(height), channels_(channels) {
  if (width < 1 || height < 1 || channels < 1) {
    throw GeometryError("float image dimensions must be positive");
  }
  data_.assign(static_cast<std::size_t>(width) * height * channels, fill);
}

FloatImage FloatImage::from(const RasterImage& img) {
  FloatImage out(img.width(), img.height(), img.channels());
  std::ranges::transform(img.data(), out.data_.begin(),
                         [](std::uint8_t v) { return static_cast<double>(v); });
  return out;
}

std::uint8_t clamp_to_byte(double v) noexcept {
  if (!(v > 0.0)) return 0;  // also maps NaN to 0
  if (v >= 255.0) return 255;
  return static_cast<std::uint8_t>(std::lround(v));
}

RasterImage FloatImage::commit() const {
  if (channels_ != 1 && channels_ != 3) {
    throw GeometryError("only 1- or 3-channel float images can be committed");
  }
  std::vector<std::uint8_t> bytes(data_.size());
  std::ranges::transform(data_, bytes.begin(), clamp_to_byte);
  return RasterImage(width_, height_, channels_, std::move(bytes));
}

BinaryMask::BinaryMask(int width, int height, bool fill) : width_(width), height_(height) {
  if (width < 1 || height < 1) throw GeometryError("mask dimensions must be positive");
  bits_.assign(static_cast<std::size_t>(width) * height, fill ? 1 : 0);
}

std::size_t BinaryMask::count() const noexcept {
  return static_cast<std::size_t>(std::ranges::count(bits_, std::uint8_t{1}));
}

bool BinaryMask::any() const noexcept {
  return std::ranges::any_of(bits_, [](std::uint8_t b) { return b != 0; });
}

BinaryMask BinaryMask::inverted() const {
  BinaryMask out = *this;
  for (auto& b : out.bits_) b = b ? 0 : 1;
  return out;
}

RasterImage to_rgb(const RasterImage& img) {
  if (img.channels() == 3) return img;
  RasterImage out(img.width(), img.height(), 3);
  auto src = img.data();
  auto dst = out.data();
  for (std::size_t i = 0; i < src.size(); ++i) {
    dst[3 * i] = dst[3 * i + 1] = dst[3 * i + 2] = src[i];
  }
  return out;
}

}  // namespace viewforge
