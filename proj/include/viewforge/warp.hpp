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

#include <string>
#include <utility>
#include <vector>

#include "viewforge/core/raster.hpp"
#include "viewforge/core/rng.hpp"
#include "viewforge/cropper.hpp"

namespace viewforge {

struct ElasticParams {
  double alpha = 34.0;  // displacement scale, pixels
  double sigma = 4.0;   // smoothing std-dev, pixels

  void validate() const;
};

struct DisplacementField {
  FloatImage dx;
  FloatImage dy;
};

// Uniform (-1, 1) noise per pixel, Gaussian-smoothed (truncated at 4 sigma,
// reflect borders) and scaled by alpha.
DisplacementField elastic_displacement(int width, int height, const ElasticParams& p, SeededRng& rng);

// Samples img bilinearly at (x + dx, y + dy) with reflect borders.
RasterImage elastic_deform(const RasterImage& img, const ElasticParams& p, SeededRng& rng);
RasterImage apply_displacement(const RasterImage& img, const DisplacementField& field);

struct ColorJitter {
  double brightness = 0.4;
  double contrast = 0.4;
  double saturation = 0.4;
  double hue = 0.1;
};

struct AppearanceParams {
  double blur_prob = 0.5;
  Range blur_sigma_range{0.1, 2.0};
  double jitter_prob = 0.8;
  ColorJitter jitter;
  double grayscale_prob = 0.2;
  double hflip_prob = 0.5;

  static AppearanceParams disabled();
  void validate() const;
};

RasterImage hflip(const RasterImage& img);
RasterImage to_grayscale_rgb(const RasterImage& img);
RasterImage gaussian_blur(const RasterImage& img, double sigma);

// flip -> jitter -> grayscale -> blur, each gated by its probability. Jitter
// applies brightness, contrast, saturation and hue in that order. Names of the
// applied steps are appended to `applied` when given.
RasterImage apply_appearance(const RasterImage& img, const AppearanceParams& p, SeededRng& rng,
                             std::vector<std::string>* applied = nullptr);

}  // namespace viewforge
