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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string_view>
#include <vector>

#include "viewforge/core/box.hpp"
#include "viewforge/core/raster.hpp"
#include "viewforge/core/rng.hpp"
#include "viewforge/cropper.hpp"

namespace viewforge {

// Per-pixel object likelihood in [0, 1].
class SaliencyMap {
 public:
  SaliencyMap(int width, int height, std::vector<double> scores);

  // Scores are the 8-bit samples divided by 255. Image must be single-channel.
  static SaliencyMap from_gray(const RasterImage& gray);
  static SaliencyMap load(const std::filesystem::path& png_path);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  double at(int x, int y) const { return scores_[static_cast<std::size_t>(y) * width_ + x]; }

  // Single-channel float image of the scores.
  FloatImage as_image() const;

 private:
  int width_;
  int height_;
  std::vector<double> scores_;
};

enum class SaliencyMode { kNone, kOverlapConstraint, kObjectCrop, kTightened };

std::string_view to_string(SaliencyMode mode);
std::optional<SaliencyMode> parse_saliency_mode(std::string_view text);

struct SaliencyStrategy {
  SaliencyMode mode = SaliencyMode::kNone;
  double binarize_threshold = 0.5;
  int min_component_area = 64;
  double overlap_fraction = 0.2;  // rho
  int box_padding = 0;

  void validate() const;
};

// Bit set iff score >= threshold.
BinaryMask binarize(const SaliencyMap& map, double threshold);

struct ObjectBox {
  PixelBox box;
  std::size_t pixel_count;
};

// 4-connected components with pixel count >= min_component_area, tight
// bounding boxes, sorted by descending pixel count (ties in raster order of
// each component's first pixel).
std::vector<ObjectBox> extract_object_components(const BinaryMask& mask, int min_component_area);
std::vector<PixelBox> extract_object_boxes(const BinaryMask& mask, int min_component_area);

// Uniformly picks one box, pads it and clamps it to the image. Throws
// NoSalientObject when `boxes` is empty.
PixelBox tightened_source_crop(int img_w, int img_h, const std::vector<PixelBox>& boxes,
                               int padding, SeededRng& rng);

// Summed-area table over a mask for O(1) box counts.
class MaskIntegral {
 public:
  explicit MaskIntegral(const BinaryMask& mask);
  std::int64_t count(const PixelBox& box) const noexcept;
  std::int64_t total() const noexcept { return total_; }

 private:
  int width_;
  std::vector<std::int64_t> sums_;  // (width+1) x (height+1)
  std::int64_t total_;
};

struct OverlapCrop {
  PixelBox box;
  double coverage;  // fraction of all set pixels inside the box
  bool satisfied;
};

// Area crops rejection-sampled until they contain >= rho of all set pixels.
// After max_rejection_tries the best-coverage crop is returned.
OverlapCrop sample_overlap_crop(int img_w, int img_h, const MaskIntegral& salient,
                                const CropParams& p, double rho, SeededRng& rng);
OverlapCrop sample_overlap_crop(const BinaryMask& salient, const CropParams& p, double rho,
                                SeededRng& rng);

// Non-salient pixels become one random gray level g in {0..255}.
RasterImage rand_gray_background(const RasterImage& img, const BinaryMask& salient, SeededRng& rng);

}  // namespace viewforge
