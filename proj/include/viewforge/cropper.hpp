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

#include <functional>
#include <utility>

#include "viewforge/core/box.hpp"
#include "viewforge/core/rng.hpp"

namespace viewforge {

struct Range {
  double lo;
  double hi;
};

struct CropParams {
  double min_area_frac = 0.20;  // m
  double max_area_frac = 1.0;   // M
  Range aspect_range{0.5, 2.0};
  double iou_threshold = 0.0;  // t
  int max_rejection_tries = 100;

  // Throws ConfigError describing the first violated invariant.
  void validate() const;
};

struct ResizeTargetParams {
  Range aspect_range{0.5, 2.0};
  Range side_range{128, 256};

  void validate() const;
};

struct CropPair {
  PixelBox query;
  PixelBox key;
  double iou;
  bool satisfied;
  int tries;
};

struct Extent {
  int width;
  int height;
  bool operator==(const Extent&) const = default;
};

// Area fraction uniform in [m, M], aspect log-uniform over the part of the
// aspect range that fits the image at that area, position uniform over the
// feasible offsets. Throws DegenerateGeometry if no integer box with an area
// fraction inside [m, M] exists.
PixelBox sample_area_crop(int img_w, int img_h, const CropParams& p, SeededRng& rng);

using CropSampler = std::function<PixelBox(SeededRng&)>;

// Rejection-samples pairs from `sampler` until IoU >= t. On exhaustion the
// best-IoU pair seen is returned with satisfied = false.
CropPair sample_constrained_pair(const CropSampler& sampler, const CropParams& p, SeededRng& rng);
CropPair sample_constrained_pair(int img_w, int img_h, const CropParams& p, SeededRng& rng);

Extent sample_resize_target(const ResizeTargetParams& p, SeededRng& rng);

}  // namespace viewforge
