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

#include "viewforge/kernels.hpp"

#include <algorithm>
#include <cmath>

#include "viewforge/error.hpp"

namespace viewforge::kernels {
namespace {

struct Tap {
  int i0;
  int i1;
  double w1;  // weight of i1; i0 gets 1 - w1
};

// Half-pixel-centre source taps for one axis.
std::vector<Tap> linear_taps(int in_n, int out_n) {
  std::vector<Tap> taps(out_n);
  const double scale = static_cast<double>(in_n) / out_n;
  for (int o = 0; o < out_n; ++o) {
    double s = (o + 0.5) * scale - 0.5;
    s = std::clamp(s, 0.0, static_cast<double>(in_n - 1));
    const int i0 = static_cast<int>(std::floor(s));
    const int i1 = std::min(i0 + 1, in_n - 1);
    taps[o] = {i0, i1, s - i0};
  }
  return taps;
}

}  // namespace

int reflect_index(int i, int n) noexcept {
  if (n == 1) return 0;
  const int period = 2 * n;
  i %= period;
  if (i < 0) i += period;
  return i < n ? i : period - 1 - i;
}

double reflect_coord(double x, int n) noexcept {
  const double period = 2.0 * n;
  double y = std::fmod(x + 0.5, period);
  if (y < 0) y += period;
  if (y > n) y = period - y;
  return std::clamp(y - 0.5, 0.0, static_cast<double>(n - 1));
}

FloatImage resize_bilinear(const FloatImage& src, int out_w, int out_h) {
  if (out_w < 1 || out_h < 1) throw GeometryError("resize target must be at least 1x1");
  const int ch = src.channels();
  FloatImage out(out_w, out_h, ch);
  const auto xt = linear_taps(src.width(), out_w);
  const auto yt = linear_taps(src.height(), out_h);
  const auto in = src.data();
  auto dst = out.data();
  const std::size_t in_stride = static_cast<std::size_t>(src.width()) * ch;
  const std::size_t out_stride = static_cast<std::size_t>(out_w) * ch;

#pragma omp parallel for schedule(static)
  for (int y = 0; y < out_h; ++y) {
    const Tap ty = yt[y];
    const double* r0 = in.data() + ty.i0 * in_stride;
    const double* r1 = in.data() + ty.i1 * in_stride;
    double* o = dst.data() + y * out_stride;
    for (int x = 0; x < out_w; ++x) {
      const Tap tx = xt[x];
      for (int c = 0; c < ch; ++c) {
        const double top = r0[tx.i0 * ch + c] * (1.0 - tx.w1) + r0[tx.i1 * ch + c] * tx.w1;
        const double bot = r1[tx.i0 * ch + c] * (1.0 - tx.w1) + r1[tx.i1 * ch + c] * tx.w1;
        o[x * ch + c] = top * (1.0 - ty.w1) + bot * ty.w1;
      }
    }
  }
  return out;
}

std::vector<double> gaussian_weights(double sigma, int radius) {
  if (!(sigma > 0.0) || radius < 0) throw GeometryError("gaussian needs sigma > 0, radius >= 0");
  std::vector<double> w(2 * radius + 1);
  double sum = 0.0;
  for (int k = -radius; k <= radius; ++k) {
    w[k + radius] = std::exp(-0.5 * (k * k) / (sigma * sigma));
    sum += w[k + radius];
  }
  for (double& v : w) v /= sum;
  return w;
}

FloatImage gaussian_blur(const FloatImage& src, double sigma, int radius) {
  const auto w = gaussian_weights(sigma, radius);
  const int width = src.width();
  const int height = src.height();
  const int ch = src.channels();
  FloatImage tmp(width, height, ch);
  FloatImage out(width, height, ch);

  std::vector<int> xi(static_cast<std::size_t>(width) * w.size());
  for (int x = 0; x < width; ++x) {
    for (int k = -radius; k <= radius; ++k) {
      xi[x * w.size() + (k + radius)] = reflect_index(x + k, width);
    }
  }
  const auto in = src.data();
  auto t = tmp.data();
  const std::size_t stride = static_cast<std::size_t>(width) * ch;

#pragma omp parallel for schedule(static)
  for (int y = 0; y < height; ++y) {
    const double* r = in.data() + y * stride;
    double* o = t.data() + y * stride;
    for (int x = 0; x < width; ++x) {
      const int* idx = &xi[x * w.size()];
      for (int c = 0; c < ch; ++c) {
        double acc = 0.0;
        for (std::size_t k = 0; k < w.size(); ++k) acc += w[k] * r[idx[k] * ch + c];
        o[x * ch + c] = acc;
      }
    }
  }

  auto o = out.data();
#pragma omp parallel for schedule(static)
  for (int y = 0; y < height; ++y) {
    double* dst = o.data() + y * stride;
    for (int x = 0; x < width; ++x) {
      for (int c = 0; c < ch; ++c) {
        double acc = 0.0;
        for (int k = -radius; k <= radius; ++k) {
          acc += w[k + radius] * t[reflect_index(y + k, height) * stride + x * ch + c];
        }
        dst[x * ch + c] = acc;
      }
    }
  }
  return out;
}

FloatImage remap_reflect(const FloatImage& src, const FloatImage& dx, const FloatImage& dy) {
  const int width = src.width();
  const int height = src.height();
  const int ch = src.channels();
  if (dx.width() != width || dx.height() != height || dy.width() != width ||
      dy.height() != height || dx.channels() != 1 || dy.channels() != 1) {
    throw GeometryError("displacement fields must be single-channel and match the image");
  }
  FloatImage out(width, height, ch);
  const auto in = src.data();
  auto dst = out.data();
  const std::size_t stride = static_cast<std::size_t>(width) * ch;

#pragma omp parallel for schedule(static)
  for (int y = 0; y < height; ++y) {
    double* o = dst.data() + y * stride;
    for (int x = 0; x < width; ++x) {
      const double sx = reflect_coord(x + dx.at(x, y), width);
      const double sy = reflect_coord(y + dy.at(x, y), height);
      const int x0 = static_cast<int>(std::floor(sx));
      const int y0 = static_cast<int>(std::floor(sy));
      const int x1 = std::min(x0 + 1, width - 1);
      const int y1 = std::min(y0 + 1, height - 1);
      const double fx = sx - x0;
      const double fy = sy - y0;
      const double* r0 = in.data() + y0 * stride;
      const double* r1 = in.data() + y1 * stride;
      for (int c = 0; c < ch; ++c) {
        const double top = r0[x0 * ch + c] * (1.0 - fx) + r0[x1 * ch + c] * fx;
        const double bot = r1[x0 * ch + c] * (1.0 - fx) + r1[x1 * ch + c] * fx;
        o[x * ch + c] = top * (1.0 - fy) + bot * fy;
      }
    }
  }
  return out;
}

}  // namespace viewforge::kernels
