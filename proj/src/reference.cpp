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

#include "viewforge/reference.hpp"

#include <algorithm>
#include <cmath>

#include "viewforge/kernels.hpp"

namespace viewforge::reference {
namespace {

double lerp_sample(const FloatImage& src, double sx, double sy, int c) {
  const int x0 = static_cast<int>(std::floor(sx));
  const int y0 = static_cast<int>(std::floor(sy));
  const int x1 = std::min(x0 + 1, src.width() - 1);
  const int y1 = std::min(y0 + 1, src.height() - 1);
  const double fx = sx - x0;
  const double fy = sy - y0;
  const double top = src.at(x0, y0, c) * (1.0 - fx) + src.at(x1, y0, c) * fx;
  const double bot = src.at(x0, y1, c) * (1.0 - fx) + src.at(x1, y1, c) * fx;
  return top * (1.0 - fy) + bot * fy;
}

}  // namespace

FloatImage resize_bilinear(const FloatImage& src, int out_w, int out_h) {
  FloatImage out(out_w, out_h, src.channels());
  const double sxs = static_cast<double>(src.width()) / out_w;
  const double sys = static_cast<double>(src.height()) / out_h;
  for (int y = 0; y < out_h; ++y) {
    for (int x = 0; x < out_w; ++x) {
      const double sx = std::clamp((x + 0.5) * sxs - 0.5, 0.0, src.width() - 1.0);
      const double sy = std::clamp((y + 0.5) * sys - 0.5, 0.0, src.height() - 1.0);
      for (int c = 0; c < src.channels(); ++c) out.at(x, y, c) = lerp_sample(src, sx, sy, c);
    }
  }
  return out;
}

FloatImage gaussian_blur(const FloatImage& src, double sigma, int radius) {
  const auto w = kernels::gaussian_weights(sigma, radius);
  FloatImage tmp(src.width(), src.height(), src.channels());
  FloatImage out(src.width(), src.height(), src.channels());
  for (int y = 0; y < src.height(); ++y) {
    for (int x = 0; x < src.width(); ++x) {
      for (int c = 0; c < src.channels(); ++c) {
        double acc = 0.0;
        for (int k = -radius; k <= radius; ++k) {
          acc += w[k + radius] * src.at(kernels::reflect_index(x + k, src.width()), y, c);
        }
        tmp.at(x, y, c) = acc;
      }
    }
  }
  for (int y = 0; y < src.height(); ++y) {
    for (int x = 0; x < src.width(); ++x) {
      for (int c = 0; c < src.channels(); ++c) {
        double acc = 0.0;
        for (int k = -radius; k <= radius; ++k) {
          acc += w[k + radius] * tmp.at(x, kernels::reflect_index(y + k, src.height()), c);
        }
        out.at(x, y, c) = acc;
      }
    }
  }
  return out;
}

FloatImage remap_reflect(const FloatImage& src, const FloatImage& dx, const FloatImage& dy) {
  FloatImage out(src.width(), src.height(), src.channels());
  for (int y = 0; y < src.height(); ++y) {
    for (int x = 0; x < src.width(); ++x) {
      const double sx = kernels::reflect_coord(x + dx.at(x, y), src.width());
      const double sy = kernels::reflect_coord(y + dy.at(x, y), src.height());
      for (int c = 0; c < src.channels(); ++c) out.at(x, y, c) = lerp_sample(src, sx, sy, c);
    }
  }
  return out;
}

}  // namespace viewforge::reference
