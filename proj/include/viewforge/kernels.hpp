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

#include <vector>

#include "viewforge/core/raster.hpp"

// Data-parallel pixel kernels. Every kernel splits work by output row under
// OpenMP; per-pixel arithmetic is identical to the serial versions in
// reference.hpp, so outputs are bitwise equal regardless of thread count.
// Inside an enclosing parallel region (item-level workers) the loops run on
// the calling thread.
namespace viewforge::kernels {

// Half-pixel-centre bilinear, source coordinates clamped to the edge.
FloatImage resize_bilinear(const FloatImage& src, int out_w, int out_h);

// Normalized Gaussian weights w[-radius..radius], stored from index 0.
std::vector<double> gaussian_weights(double sigma, int radius);

// Separable Gaussian with half-sample symmetric (reflect) borders.
FloatImage gaussian_blur(const FloatImage& src, double sigma, int radius);

// out(x, y) = src sampled bilinearly at (x + dx(x, y), y + dy(x, y)) with
// reflect border handling. dx and dy are single-channel, same size as src.
FloatImage remap_reflect(const FloatImage& src, const FloatImage& dx, const FloatImage& dy);

// Index helpers shared with the reference implementations.
int reflect_index(int i, int n) noexcept;
double reflect_coord(double x, int n) noexcept;

}  // namespace viewforge::kernels
