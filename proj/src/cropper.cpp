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

#include "viewforge/cropper.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>

#include "viewforge/error.hpp"

namespace viewforge {
namespace {

[[noreturn]] void fail(const std::string& field, const std::string& why) {
  throw ConfigError(field + ": " + why);
}

// Smallest integer h with w*h/(W*H) >= frac, evaluated the same way the
// callers check membership.
std::int64_t min_height_for(double frac, std::int64_t w, std::int64_t total) {
  auto h = static_cast<std::int64_t>(std::ceil(frac * static_cast<double>(total) / w));
  h = std::max<std::int64_t>(h, 1);
  while (h > 1 && static_cast<double>(w * (h - 1)) / total >= frac) --h;
  while (static_cast<double>(w * h) / total < frac) ++h;
  return h;
}

std::int64_t max_height_for(double frac, std::int64_t w, std::int64_t total) {
  auto h = static_cast<std::int64_t>(std::floor(frac * static_cast<double>(total) / w));
  while (static_cast<double>(w * (h + 1)) / total <= frac) ++h;
  while (h > 0 && static_cast<double>(w * h) / total > frac) --h;
  return h;
}

struct HeightWindow {
  std::int64_t lo;
  std::int64_t hi;
};

HeightWindow window_for(std::int64_t w, int img_h, std::int64_t total, const CropParams& p) {
  return {std::max<std::int64_t>(1, min_height_for(p.min_area_frac, w, total)),
          std::min<std::int64_t>(img_h, max_height_for(p.max_area_frac, w, total))};
}

}  // namespace

void CropParams::validate() const {
  if (!(min_area_frac > 0.0 && min_area_frac <= 1.0)) fail("min_area_frac", "must be in (0, 1]");
  if (!(max_area_frac > 0.0 && max_area_frac <= 1.0)) fail("max_area_frac", "must be in (0, 1]");
  if (min_area_frac > max_area_frac) fail("min_area_frac", "must not exceed max_area_frac");
  if (!(aspect_range.lo > 0.0)) fail("aspect_range", "lower bound must be positive");
  if (aspect_range.lo > aspect_range.hi) fail("aspect_range", "lower bound exceeds upper bound");
  if (!(iou_threshold >= 0.0 && iou_threshold < 1.0)) fail("iou_threshold", "must be in [0, 1)");
  if (max_rejection_tries < 1) fail("max_rejection_tries", "must be at least 1");
}

void ResizeTargetParams::validate() const {
  if (!(aspect_range.lo > 0.0)) fail("aspect_range", "lower bound must be positive");
  if (aspect_range.lo > aspect_range.hi) fail("aspect_range", "lower bound exceeds upper bound");
  if (side_range.lo < 1.0) fail("side_range", "lower bound must be at least 1");
  if (side_range.lo > side_range.hi) fail("side_range", "lower bound exceeds upper bound");
  if (side_range.lo != std::floor(side_range.lo) || side_range.hi != std::floor(side_range.hi)) {
    fail("side_range", "bounds must be whole pixels");
  }
}

PixelBox sample_area_crop(int img_w, int img_h, const CropParams& p, SeededRng& rng) {
  if (img_w < 1 || img_h < 1) throw DegenerateGeometry("crop source has no pixels");
  const std::int64_t total = static_cast<std::int64_t>(img_w) * img_h;

  const double frac = rng.uniform(p.min_area_frac, p.max_area_frac);
  const double area = frac * static_cast<double>(total);
  // Aspect ratios whose w = sqrt(area * r), h = sqrt(area / r) fit the image.
  double r_lo = std::max(p.aspect_range.lo, area / (static_cast<double>(img_h) * img_h));
  double r_hi = std::min(p.aspect_range.hi, static_cast<double>(img_w) * img_w / area);
  if (r_lo > r_hi) r_lo = r_hi = std::clamp(static_cast<double>(img_w) / img_h, p.aspect_range.lo, p.aspect_range.hi);
  const double aspect = rng.log_uniform(r_lo, r_hi);

  // Preferred width, then the nearest width whose height window is non-empty.
  const auto w_pref = std::clamp<std::int64_t>(std::llround(std::sqrt(area * aspect)), 1, img_w);
  std::int64_t w = -1;
  for (std::int64_t d = 0; d < img_w && w < 0; ++d) {
    for (const std::int64_t cand : {w_pref - d, w_pref + d}) {
      if (cand < 1 || cand > img_w) continue;
      const auto win = window_for(cand, img_h, total, p);
      if (win.lo <= win.hi) {
        w = cand;
        break;
      }
    }
  }
  if (w < 0) {
    std::ostringstream os;
    os << "no crop with area fraction in [" << p.min_area_frac << ", " << p.max_area_frac
       << "] fits a " << img_w << "x" << img_h << " image";
    throw DegenerateGeometry(os.str());
  }
  const auto win = window_for(w, img_h, total, p);
  const auto h = std::clamp<std::int64_t>(std::llround(area / static_cast<double>(w)), win.lo, win.hi);

  const auto x = rng.uniform_int(0, img_w - w);
  const auto y = rng.uniform_int(0, img_h - h);
  return PixelBox::from_size(static_cast<int>(x), static_cast<int>(y), static_cast<int>(w),
                             static_cast<int>(h));
}

CropPair sample_constrained_pair(const CropSampler& sampler, const CropParams& p, SeededRng& rng) {
  std::optional<CropPair> best;
  for (int tryno = 1; tryno <= p.max_rejection_tries; ++tryno) {
    PixelBox q = sampler(rng);
    PixelBox k = sampler(rng);
    const double v = iou(q, k);
    if (v >= p.iou_threshold) return {q, k, v, true, tryno};
    if (!best || v > best->iou) best = CropPair{q, k, v, false, tryno};
  }
  best->tries = p.max_rejection_tries;
  return *best;
}

CropPair sample_constrained_pair(int img_w, int img_h, const CropParams& p, SeededRng& rng) {
  return sample_constrained_pair(
      [&](SeededRng& r) { return sample_area_crop(img_w, img_h, p, r); }, p, rng);
}

Extent sample_resize_target(const ResizeTargetParams& p, SeededRng& rng) {
  const auto lo = static_cast<std::int64_t>(p.side_range.lo);
  const auto hi = static_cast<std::int64_t>(p.side_range.hi);
  const auto h = rng.uniform_int(lo, hi);
  const double r = rng.log_uniform(p.aspect_range.lo, p.aspect_range.hi);
  const auto w = std::clamp<std::int64_t>(std::llround(static_cast<double>(h) * r), lo, hi);
  return {static_cast<int>(w), static_cast<int>(h)};
}

}  // namespace viewforge
