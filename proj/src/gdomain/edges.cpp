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

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <vector>

#include "viewforge/core/raster.hpp"
#include "viewforge/gdomain.hpp"

namespace viewforge::gdomain {
namespace {

std::vector<int> luma(const RasterImage& img) {
  std::vector<int> out(img.pixel_count());
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * img.width() + x;
      if (img.channels() == 1) {
        out[i] = img.at(x, y);
      } else {
        out[i] = clamp_to_byte(0.299 * img.at(x, y, 0) + 0.587 * img.at(x, y, 1) +
                               0.114 * img.at(x, y, 2));
      }
    }
  }
  return out;
}

}  // namespace

BinaryMask detect_edges(const RasterImage& img, EdgeThresholds t) {
  const int w = img.width();
  const int h = img.height();
  double low = t.low;
  double high = t.high;
  if (low > high) std::swap(low, high);

  const std::vector<int> g = luma(img);
  auto at = [&](int x, int y) {
    return g[static_cast<std::size_t>(std::clamp(y, 0, h - 1)) * w + std::clamp(x, 0, w - 1)];
  };
  std::vector<int> gx(g.size()), gy(g.size()), mag(g.size());
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const int sx = (at(x + 1, y - 1) + 2 * at(x + 1, y) + at(x + 1, y + 1)) -
                     (at(x - 1, y - 1) + 2 * at(x - 1, y) + at(x - 1, y + 1));
      const int sy = (at(x - 1, y + 1) + 2 * at(x, y + 1) + at(x + 1, y + 1)) -
                     (at(x - 1, y - 1) + 2 * at(x, y - 1) + at(x + 1, y - 1));
      const std::size_t i = static_cast<std::size_t>(y) * w + x;
      gx[i] = sx;
      gy[i] = sy;
      mag[i] = std::abs(sx) + std::abs(sy);
    }
  }
  auto m = [&](int x, int y) {
    if (x < 0 || y < 0 || x >= w || y >= h) return 0;
    return mag[static_cast<std::size_t>(y) * w + x];
  };

  // 0 = suppressed, 1 = weak candidate, 2 = strong.
  std::vector<std::uint8_t> state(g.size(), 0);
  constexpr double kTan22 = 0.41421356237309504880;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * w + x;
      const int v = mag[i];
      if (v <= low) continue;
      const double ax = std::abs(gx[i]);
      const double ay = std::abs(gy[i]);
      bool keep;
      if (ay < ax * kTan22) {
        keep = v > m(x - 1, y) && v >= m(x + 1, y);
      } else if (ay > ax / kTan22) {
        keep = v > m(x, y - 1) && v >= m(x, y + 1);
      } else {
        const int s = ((gx[i] < 0) != (gy[i] < 0)) ? -1 : 1;
        keep = v > m(x - s, y - 1) && v > m(x + s, y + 1);
      }
      if (keep) state[i] = v > high ? 2 : 1;
    }
  }

  BinaryMask edges(w, h);
  std::vector<int> stack;
  for (std::size_t i = 0; i < state.size(); ++i) {
    if (state[i] == 2) stack.push_back(static_cast<int>(i));
  }
  while (!stack.empty()) {
    const int i = stack.back();
    stack.pop_back();
    const int x = i % w;
    const int y = i / w;
    if (edges.get(x, y)) continue;
    edges.set(x, y);
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dx = -1; dx <= 1; ++dx) {
        const int nx = x + dx;
        const int ny = y + dy;
        if (nx < 0 || ny < 0 || nx >= w || ny >= h || edges.get(nx, ny)) continue;
        if (state[static_cast<std::size_t>(ny) * w + nx] != 0) stack.push_back(ny * w + nx);
      }
    }
  }
  return edges;
}

}  // namespace viewforge::gdomain
