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

#include "viewforge/core/resize.hpp"

#include "viewforge/error.hpp"
#include "viewforge/kernels.hpp"

namespace viewforge {

FloatImage resize_bilinear(const FloatImage& img, int out_w, int out_h) {
  return kernels::resize_bilinear(img, out_w, out_h);
}

RasterImage resize_bilinear(const RasterImage& img, int out_w, int out_h) {
  if (out_w == img.width() && out_h == img.height()) return img;
  return kernels::resize_bilinear(FloatImage::from(img), out_w, out_h).commit();
}

RasterImage crop(const RasterImage& img, const PixelBox& box) {
  if (!box.fits_in(img.width(), img.height())) throw GeometryError("crop box outside image");
  RasterImage out(box.width(), box.height(), img.channels());
  for (int y = 0; y < box.height(); ++y) {
    auto src = img.row(box.y0() + y).subspan(static_cast<std::size_t>(box.x0()) * img.channels(),
                                             out.row(y).size());
    std::copy(src.begin(), src.end(), out.row(y).begin());
  }
  return out;
}

FloatImage crop(const FloatImage& img, const PixelBox& box) {
  if (!box.fits_in(img.width(), img.height())) throw GeometryError("crop box outside image");
  FloatImage out(box.width(), box.height(), img.channels());
  for (int y = 0; y < box.height(); ++y) {
    for (int x = 0; x < box.width(); ++x) {
      for (int c = 0; c < img.channels(); ++c) out.at(x, y, c) = img.at(box.x0() + x, box.y0() + y, c);
    }
  }
  return out;
}

BinaryMask crop(const BinaryMask& mask, const PixelBox& box) {
  if (!box.fits_in(mask.width(), mask.height())) throw GeometryError("crop box outside mask");
  BinaryMask out(box.width(), box.height());
  for (int y = 0; y < box.height(); ++y) {
    for (int x = 0; x < box.width(); ++x) out.set(x, y, mask.get(box.x0() + x, box.y0() + y));
  }
  return out;
}

}  // namespace viewforge
