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

#include "viewforge/core/raster.hpp"

// Straightforward single-threaded versions of the kernels in kernels.hpp,
// written per pixel without precomputed tables. Kept for equivalence tests
// and the benchmark.
namespace viewforge::reference {

FloatImage resize_bilinear(const FloatImage& src, int out_w, int out_h);
FloatImage gaussian_blur(const FloatImage& src, double sigma, int radius);
FloatImage remap_reflect(const FloatImage& src, const FloatImage& dx, const FloatImage& dy);

}  // namespace viewforge::reference
