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

#pragma once

#include <cstdint>
#include <optional>
#include <ostream>

namespace viewforge {

// Half-open pixel rectangle [x0, x1) x [y0, y1). Origin top-left, y down.
class PixelBox {
 public:
  // Throws GeometryError unless x0 < x1 and y0 < y1.
  PixelBox(int x0, int y0, int x1, int y1);

  static PixelBox from_size(int x, int y, int w, int h) { return {x, y, x + w, y + h}; }
  static PixelBox full(int width, int height) { return {0, 0, width, height}; }

  int x0() const noexcept { return x0_; }
  int y0() const noexcept { return y0_; }
  int x1() const noexcept { return x1_; }
  int y1() const noexcept { return y1_; }
  int width() const noexcept { return x1_ - x0_; }
  int height() const noexcept { return y1_ - y0_; }
  std::int64_t area() const noexcept {
    return static_cast<std::int64_t>(width()) * static_cast<std::int64_t>(height());
  }

  bool fits_in(int width, int height) const noexcept {
    return x0_ >= 0 && y0_ >= 0 && x1_ <= width && y1_ <= height;
  }
  bool contains(int x, int y) const noexcept {
    return x >= x0_ && x < x1_ && y >= y0_ && y < y1_;
  }
  bool contains(const PixelBox& o) const noexcept {
    return o.x0_ >= x0_ && o.y0_ >= y0_ && o.x1_ <= x1_ && o.y1_ <= y1_;
  }

  PixelBox translated(int dx, int dy) const { return {x0_ + dx, y0_ + dy, x1_ + dx, y1_ + dy}; }
  // Grows by pad on every side, then clamps to [0, width) x [0, height).
  PixelBox padded_clamped(int pad, int width, int height) const;

  bool operator==(const PixelBox&) const = default;

 private:
  int x0_, y0_, x1_, y1_;
};

std::optional<PixelBox> intersection(const PixelBox& a, const PixelBox& b);
std::int64_t intersection_area(const PixelBox& a, const PixelBox& b) noexcept;

// area(a ∩ b) / area(a ∪ b).
double iou(const PixelBox& a, const PixelBox& b) noexcept;

std::ostream& operator<<(std::ostream& os, const PixelBox& b);

}  // namespace viewforge
