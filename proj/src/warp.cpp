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

#include "viewforge/warp.hpp"

#include <algorithm>
#include <cmath>

#include "viewforge/error.hpp"
#include "viewforge/kernels.hpp"

namespace viewforge {
namespace {

void check_prob(double p, const char* field) {
  if (!(p >= 0.0 && p <= 1.0)) throw ConfigError(std::string(field) + ": must be in [0, 1]");
}

double luma(double r, double g, double b) { return 0.299 * r + 0.587 * g + 0.114 * b; }

void rgb_to_hsv(double r, double g, double b, double& h, double& s, double& v) {
  const double mx = std::max({r, g, b});
  const double mn = std::min({r, g, b});
  const double d = mx - mn;
  v = mx;
  s = mx > 0.0 ? d / mx : 0.0;
  if (d <= 0.0) {
    h = 0.0;
    return;
  }
  if (mx == r) {
    h = (g - b) / d;
  } else if (mx == g) {
    h = 2.0 + (b - r) / d;
  } else {
    h = 4.0 + (r - g) / d;
  }
  h /= 6.0;
  if (h < 0.0) h += 1.0;
}

void hsv_to_rgb(double h, double s, double v, double& r, double& g, double& b) {
  const double hh = (h - std::floor(h)) * 6.0;
  const int i = static_cast<int>(hh) % 6;
  const double f = hh - std::floor(hh);
  const double p = v * (1.0 - s);
  const double q = v * (1.0 - s * f);
  const double t = v * (1.0 - s * (1.0 - f));
  switch (i) {
    case 0: r = v, g = t, b = p; break;
    case 1: r = q, g = v, b = p; break;
    case 2: r = p, g = v, b = t; break;
    case 3: r = p, g = q, b = v; break;
    case 4: r = t, g = p, b = v; break;
    default: r = v, g = p, b = q; break;
  }
}

struct JitterDraw {
  double brightness, contrast, saturation, hue;
};

// Operates on [0, 255] floats, clamping after each step.
void jitter_in_place(FloatImage& f, const JitterDraw& j) {
  auto px = f.data();
  const std::size_t n = px.size() / 3;
  for (double& v : px) v = std::clamp(v * j.brightness, 0.0, 255.0);

  double mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) mean += luma(px[3 * i], px[3 * i + 1], px[3 * i + 2]);
  mean /= static_cast<double>(n);
  for (double& v : px) v = std::clamp((v - mean) * j.contrast + mean, 0.0, 255.0);

  for (std::size_t i = 0; i < n; ++i) {
    const double g = luma(px[3 * i], px[3 * i + 1], px[3 * i + 2]);
    for (int c = 0; c < 3; ++c) {
      px[3 * i + c] = std::clamp((px[3 * i + c] - g) * j.saturation + g, 0.0, 255.0);
    }
  }

  if (j.hue != 0.0) {
    for (std::size_t i = 0; i < n; ++i) {
      double h, s, v;
      rgb_to_hsv(px[3 * i] / 255.0, px[3 * i + 1] / 255.0, px[3 * i + 2] / 255.0, h, s, v);
      double r, g, b;
      hsv_to_rgb(h + j.hue, s, v, r, g, b);
      px[3 * i] = r * 255.0;
      px[3 * i + 1] = g * 255.0;
      px[3 * i + 2] = b * 255.0;
    }
  }
}

void grayscale_in_place(FloatImage& f) {
  auto px = f.data();
  for (std::size_t i = 0; i + 2 < px.size(); i += 3) {
    const double g = luma(px[i], px[i + 1], px[i + 2]);
    px[i] = px[i + 1] = px[i + 2] = g;
  }
}

int blur_radius(double sigma) { return std::max(1, static_cast<int>(std::ceil(3.0 * sigma))); }

}  // namespace

void ElasticParams::validate() const {
  if (!(alpha >= 0.0)) throw ConfigError("alpha: must be non-negative");
  if (!(sigma > 0.0)) throw ConfigError("sigma: must be positive");
}

AppearanceParams AppearanceParams::disabled() {
  AppearanceParams p;
  p.blur_prob = p.jitter_prob = p.grayscale_prob = p.hflip_prob = 0.0;
  return p;
}

void AppearanceParams::validate() const {
  check_prob(blur_prob, "blur_prob");
  check_prob(jitter_prob, "jitter_prob");
  check_prob(grayscale_prob, "grayscale_prob");
  check_prob(hflip_prob, "hflip_prob");
  if (!(blur_sigma_range.lo > 0.0 && blur_sigma_range.lo <= blur_sigma_range.hi)) {
    throw ConfigError("blur_sigma_range: needs 0 < lo <= hi");
  }
  for (double s : {jitter.brightness, jitter.contrast, jitter.saturation}) {
    if (!(s >= 0.0 && s <= 1.0)) throw ConfigError("jitter: strengths must be in [0, 1]");
  }
  if (!(jitter.hue >= 0.0 && jitter.hue <= 0.5)) throw ConfigError("jitter.hue: must be in [0, 0.5]");
}

DisplacementField elastic_displacement(int width, int height, const ElasticParams& p, SeededRng& rng) {
  FloatImage dx(width, height, 1);
  FloatImage dy(width, height, 1);
  for (double& v : dx.data()) v = rng.symmetric_open();
  for (double& v : dy.data()) v = rng.symmetric_open();
  const int radius = static_cast<int>(std::ceil(4.0 * p.sigma));
  dx = kernels::gaussian_blur(dx, p.sigma, radius);
  dy = kernels::gaussian_blur(dy, p.sigma, radius);
  for (double& v : dx.data()) v *= p.alpha;
  for (double& v : dy.data()) v *= p.alpha;
  return {std::move(dx), std::move(dy)};
}

RasterImage apply_displacement(const RasterImage& img, const DisplacementField& field) {
  return kernels::remap_reflect(FloatImage::from(img), field.dx, field.dy).commit();
}

RasterImage elastic_deform(const RasterImage& img, const ElasticParams& p, SeededRng& rng) {
  if (img.width() < 2 || img.height() < 2) throw GeometryError("elastic deformation needs >= 2x2");
  return apply_displacement(img, elastic_displacement(img.width(), img.height(), p, rng));
}

RasterImage hflip(const RasterImage& img) {
  RasterImage out(img.width(), img.height(), img.channels());
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      for (int c = 0; c < img.channels(); ++c) out.at(img.width() - 1 - x, y, c) = img.at(x, y, c);
    }
  }
  return out;
}

RasterImage to_grayscale_rgb(const RasterImage& img) {
  FloatImage f = FloatImage::from(to_rgb(img));
  grayscale_in_place(f);
  return f.commit();
}

RasterImage gaussian_blur(const RasterImage& img, double sigma) {
  return kernels::gaussian_blur(FloatImage::from(img), sigma, blur_radius(sigma)).commit();
}

RasterImage apply_appearance(const RasterImage& img, const AppearanceParams& p, SeededRng& rng,
                             std::vector<std::string>* applied) {
  if (img.channels() != 3) throw GeometryError("appearance augmentation expects RGB input");
  auto note = [&](const char* what) {
    if (applied) applied->emplace_back(what);
  };
  RasterImage base = img;
  if (rng.bernoulli(p.hflip_prob)) {
    base = hflip(img);
    note("hflip");
  }
  FloatImage f = FloatImage::from(base);
  bool touched = false;

  if (rng.bernoulli(p.jitter_prob)) {
    const JitterDraw j{rng.uniform(1.0 - p.jitter.brightness, 1.0 + p.jitter.brightness),
                       rng.uniform(1.0 - p.jitter.contrast, 1.0 + p.jitter.contrast),
                       rng.uniform(1.0 - p.jitter.saturation, 1.0 + p.jitter.saturation),
                       rng.uniform(-p.jitter.hue, p.jitter.hue)};
    jitter_in_place(f, j);
    touched = true;
    note("jitter");
  }
  if (rng.bernoulli(p.grayscale_prob)) {
    grayscale_in_place(f);
    touched = true;
    note("grayscale");
  }
  if (rng.bernoulli(p.blur_prob)) {
    const double sigma = rng.uniform(p.blur_sigma_range.lo, p.blur_sigma_range.hi);
    f = kernels::gaussian_blur(f, sigma, blur_radius(sigma));
    touched = true;
    note("blur");
  }
  return touched ? f.commit() : base;
}

}  // namespace viewforge
