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

#include "viewforge/core/box.hpp"
#include "viewforge/core/raster.hpp"

namespace viewforge {

// Bilinear resampling with half-pixel-centre alignment and edge clamping.
RasterImage resize_bilinear(const RasterImage& img, int out_w, int out_h);
FloatImage resize_bilinear(const FloatImage& img, int out_w, int out_h);

RasterImage crop(const RasterImage& img, const PixelBox& box);
FloatImage crop(const FloatImage& img, const PixelBox& box);
BinaryMask crop(const BinaryMask& mask, const PixelBox& box);

}  // namespace viewforge
