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

#include "viewforge/core/box.hpp"

#include <algorithm>
#include <sstream>

#include "viewforge/error.hpp"

namespace viewforge {

PixelBox::PixelBox(int x0, int y0, int x1, int y1) : x0_(x0), y0_(y0), x1_(x1), y1_(y1) {
  if (x0 >= x1 || y0 >= y1) {
    std::ostringstream os;
    os << "empty box (" << x0 << ", " << y0 << ", " << x1 << ", " << y1 << ")";
    throw GeometryError(os.str());
  }
}

PixelBox PixelBox::padded_clamped(int pad, int width, int height) const {
  return {std::max(0, x0_ - pad), std::max(0, y0_ - pad), std::min(width, x1_ + pad),
          std::min(height, y1_ + pad)};
}

std::int64_t intersection_area(const PixelBox& a, const PixelBox& b) noexcept {
  const std::int64_t w = std::min(a.x1(), b.x1()) - std::max(a.x0(), b.x0());
  const std::int64_t h = std::min(a.y1(), b.y1()) - std::max(a.y0(), b.y0());
  return (w > 0 && h > 0) ? w * h : 0;
}

std::optional<PixelBox> intersection(const PixelBox& a, const PixelBox& b) {
  if (intersection_area(a, b) == 0) return std::nullopt;
  return PixelBox(std::max(a.x0(), b.x0()), std::max(a.y0(), b.y0()), std::min(a.x1(), b.x1()),
                  std::min(a.y1(), b.y1()));
}

double iou(const PixelBox& a, const PixelBox& b) noexcept {
  const std::int64_t inter = intersection_area(a, b);
  const std::int64_t uni = a.area() + b.area() - inter;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

std::ostream& operator<<(std::ostream& os, const PixelBox& b) {
  return os << "(" << b.x0() << ", " << b.y0() << ", " << b.x1() << ", " << b.y1() << ")";
}

}  // namespace viewforge
