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

#include <cmath>

#include "viewforge/error.hpp"
#include "viewforge/gdomain.hpp"

namespace viewforge::gdomain {
namespace {

constexpr int kDx[4] = {1, 0, -1, 0};
constexpr int kDy[4] = {0, 1, 0, -1};

// Writes the solution back over `base` on Omega only.
RasterImage commit_over(const RasterImage& base, const BinaryMask& omega, const FloatImage& values) {
  RasterImage out = base;
  for (int y = 0; y < base.height(); ++y) {
    for (int x = 0; x < base.width(); ++x) {
      if (!omega.get(x, y)) continue;
      for (int c = 0; c < base.channels(); ++c) out.at(x, y, c) = clamp_to_byte(values.at(x, y, c));
    }
  }
  return out;
}

}  // namespace

std::pair<SolveDomain, GuidanceField> seamless_clone_system(const RasterImage& src,
                                                            const RasterImage& dst,
                                                            const BinaryMask& region, Offset offset,
                                                            CloneMode mode) {
  if (!region.matches(src)) throw GeometryError("clone region does not match the source image");
  if (src.channels() != dst.channels()) throw GeometryError("clone images differ in channel count");
  const int w = dst.width();
  const int h = dst.height();

  BinaryMask omega(w, h);
  for (int y = 0; y < src.height(); ++y) {
    for (int x = 0; x < src.width(); ++x) {
      if (!region.get(x, y)) continue;
      const int tx = x + offset.dx;
      const int ty = y + offset.dy;
      if (tx < 0 || ty < 0 || tx >= w || ty >= h) {
        throw GeometryError("shifted clone region leaves the destination image");
      }
      omega.set(tx, ty);
    }
  }

  const FloatImage fdst = FloatImage::from(dst);
  GuidanceField guidance{FloatImage(w, h, dst.channels(), 0.0)};
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (!omega.get(x, y)) continue;
      const int sx = x - offset.dx;
      const int sy = y - offset.dy;
      for (int d = 0; d < 4; ++d) {
        const int nx = x + kDx[d];
        const int ny = y + kDy[d];
        if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
        const int qx = sx + kDx[d];
        const int qy = sy + kDy[d];
        // Source gradient undefined past the source border: zero guidance.
        if (qx < 0 || qy < 0 || qx >= src.width() || qy >= src.height()) continue;
        for (int c = 0; c < dst.channels(); ++c) {
          double v = static_cast<double>(src.at(sx, sy, c)) - src.at(qx, qy, c);
          if (mode == CloneMode::kMixedGradients) {
            const double vd = fdst.at(x, y, c) - fdst.at(nx, ny, c);
            if (std::abs(vd) > std::abs(v)) v = vd;
          }
          guidance.divergence.at(x, y, c) += v;
        }
      }
    }
  }
  return {SolveDomain(std::move(omega), fdst), std::move(guidance)};
}

RasterImage seamless_clone(const RasterImage& src, const RasterImage& dst, const BinaryMask& region,
                           Offset offset, const SolverSettings& s, CloneMode mode) {
  if (!region.any()) return dst;
  auto [domain, guidance] = seamless_clone_system(src, dst, region, offset, mode);
  // Seed with the pasted source: the solve then only adds the smooth
  // boundary correction on top of it.
  FloatImage initial = domain.boundary();
  for (int y = 0; y < src.height(); ++y) {
    for (int x = 0; x < src.width(); ++x) {
      if (!region.get(x, y)) continue;
      for (int c = 0; c < src.channels(); ++c) initial.at(x + offset.dx, y + offset.dy, c) = src.at(x, y, c);
    }
  }
  const PoissonSolution sol = solve_poisson(domain, guidance, s, &initial);
  return commit_over(dst, domain.interior(), sol.values);
}

BinaryMask flatten_domain(int width, int height, const BinaryMask* salient) {
  BinaryMask omega(width, height);
  for (int y = 1; y + 1 < height; ++y) {
    for (int x = 1; x + 1 < width; ++x) omega.set(x, y, !(salient && salient->get(x, y)));
  }
  return omega;
}

PoissonSolution texture_flatten_region_solve(const RasterImage& img, const BinaryMask& salient,
                                             const BinaryMask& edges, const SolverSettings& s) {
  if (img.width() < 3 || img.height() < 3) throw GeometryError("texture flattening needs >= 3x3");
  if (!salient.matches(img) || !edges.matches(img)) {
    throw GeometryError("flattening masks do not match the image");
  }
  const FloatImage f = FloatImage::from(img);
  BinaryMask omega = flatten_domain(img.width(), img.height(), &salient);
  if (!omega.any()) return {f, {}};
  const GuidanceField guidance = edge_masked_gradients(f, omega, edges);
  const SolveDomain domain(std::move(omega), f);
  return solve_poisson(domain, guidance, s, &f);
}

RasterImage texture_flatten_region(const RasterImage& img, const BinaryMask& salient,
                                   const BinaryMask& edges, const SolverSettings& s) {
  const PoissonSolution sol = texture_flatten_region_solve(img, salient, edges, s);
  if (sol.channels.empty()) return img;
  return commit_over(img, flatten_domain(img.width(), img.height(), &salient), sol.values);
}

RasterImage texture_flatten_with_edges(const RasterImage& img, const BinaryMask& edges,
                                       const SolverSettings& s) {
  const BinaryMask none(img.width(), img.height(), false);
  return texture_flatten_region(img, none, edges, s);
}

RasterImage texture_flatten(const RasterImage& img, EdgeThresholds t, const SolverSettings& s) {
  if (img.width() < 3 || img.height() < 3) throw GeometryError("texture flattening needs >= 3x3");
  return texture_flatten_with_edges(img, detect_edges(img, t), s);
}

RasterImage texture_flatten_region(const RasterImage& img, const BinaryMask& salient,
                                   EdgeThresholds t, const SolverSettings& s) {
  if (img.width() < 3 || img.height() < 3) throw GeometryError("texture flattening needs >= 3x3");
  return texture_flatten_region(img, salient, detect_edges(img, t), s);
}

}  // namespace viewforge::gdomain
