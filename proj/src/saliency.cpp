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

#include "viewforge/saliency.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "viewforge/core/image_io.hpp"
#include "viewforge/error.hpp"

namespace viewforge {

SaliencyMap::SaliencyMap(int width, int height, std::vector<double> scores)
    : width_(width), height_(height), scores_(std::move(scores)) {
  if (width < 1 || height < 1 ||
      scores_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw GeometryError("saliency map size does not match its dimensions");
  }
  for (double& s : scores_) s = std::clamp(s, 0.0, 1.0);
}

SaliencyMap SaliencyMap::from_gray(const RasterImage& gray) {
  if (gray.channels() != 1) throw GeometryError("saliency maps must be single-channel");
  std::vector<double> scores(gray.pixel_count());
  std::ranges::transform(gray.data(), scores.begin(), [](std::uint8_t v) { return v / 255.0; });
  return SaliencyMap(gray.width(), gray.height(), std::move(scores));
}

SaliencyMap SaliencyMap::load(const std::filesystem::path& png_path) {
  return from_gray(read_image(png_path, ColorMode::kGray));
}

FloatImage SaliencyMap::as_image() const {
  FloatImage out(width_, height_, 1);
  std::ranges::copy(scores_, out.data().begin());
  return out;
}

std::string_view to_string(SaliencyMode mode) {
  switch (mode) {
    case SaliencyMode::kNone: return "none";
    case SaliencyMode::kOverlapConstraint: return "overlap_constraint";
    case SaliencyMode::kObjectCrop: return "object_crop";
    case SaliencyMode::kTightened: return "tightened";
  }
  return "none";
}

std::optional<SaliencyMode> parse_saliency_mode(std::string_view text) {
  for (auto m : {SaliencyMode::kNone, SaliencyMode::kOverlapConstraint, SaliencyMode::kObjectCrop,
                 SaliencyMode::kTightened}) {
    if (to_string(m) == text) return m;
  }
  return std::nullopt;
}

void SaliencyStrategy::validate() const {
  if (!(binarize_threshold > 0.0 && binarize_threshold < 1.0)) {
    throw ConfigError("binarize_threshold: must be in (0, 1)");
  }
  if (min_component_area < 1) throw ConfigError("min_component_area: must be at least 1");
  if (!(overlap_fraction >= 0.0 && overlap_fraction <= 1.0)) {
    throw ConfigError("overlap_fraction: must be in [0, 1]");
  }
  if (box_padding < 0) throw ConfigError("box_padding: must be non-negative");
}

BinaryMask binarize(const SaliencyMap& map, double threshold) {
  BinaryMask mask(map.width(), map.height());
  for (int y = 0; y < map.height(); ++y) {
    for (int x = 0; x < map.width(); ++x) mask.set(x, y, map.at(x, y) >= threshold);
  }
  return mask;
}

namespace {

class DisjointSet {
 public:
  int make() {
    parent_.push_back(static_cast<int>(parent_.size()));
    return parent_.back();
  }
  int find(int a) {
    while (parent_[a] != a) {
      parent_[a] = parent_[parent_[a]];
      a = parent_[a];
    }
    return a;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<int> parent_;
};

}  // namespace

std::vector<ObjectBox> extract_object_components(const BinaryMask& mask, int min_component_area) {
  const int w = mask.width();
  const int h = mask.height();
  std::vector<int> label(static_cast<std::size_t>(w) * h, -1);
  DisjointSet sets;

  // Two-pass labeling; provisional labels are created in raster order, and
  // unions keep the smaller label as root.
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (!mask.get(x, y)) continue;
      const int left = x > 0 ? label[y * w + x - 1] : -1;
      const int up = y > 0 ? label[(y - 1) * w + x] : -1;
      int l;
      if (left < 0 && up < 0) {
        l = sets.make();
      } else if (left >= 0 && up >= 0) {
        l = std::min(left, up);
        sets.unite(left, up);
      } else {
        l = std::max(left, up);
      }
      label[y * w + x] = l;
    }
  }

  struct Acc {
    int x0, y0, x1, y1;
    std::size_t count = 0;
  };
  std::vector<Acc> acc;
  std::vector<int> slot;  // root label -> index into acc, in raster order of first pixel
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const int l = label[y * w + x];
      if (l < 0) continue;
      const int root = sets.find(l);
      if (static_cast<std::size_t>(root) >= slot.size()) slot.resize(root + 1, -1);
      if (slot[root] < 0) {
        slot[root] = static_cast<int>(acc.size());
        acc.push_back({x, y, x + 1, y + 1});
      }
      Acc& a = acc[slot[root]];
      a.x0 = std::min(a.x0, x);
      a.y0 = std::min(a.y0, y);
      a.x1 = std::max(a.x1, x + 1);
      a.y1 = std::max(a.y1, y + 1);
      ++a.count;
    }
  }

  std::vector<ObjectBox> out;
  for (const Acc& a : acc) {
    if (a.count >= static_cast<std::size_t>(min_component_area)) {
      out.push_back({PixelBox(a.x0, a.y0, a.x1, a.y1), a.count});
    }
  }
  std::ranges::stable_sort(out, [](const ObjectBox& a, const ObjectBox& b) {
    return a.pixel_count > b.pixel_count;
  });
  return out;
}

std::vector<PixelBox> extract_object_boxes(const BinaryMask& mask, int min_component_area) {
  std::vector<PixelBox> boxes;
  for (const auto& c : extract_object_components(mask, min_component_area)) boxes.push_back(c.box);
  return boxes;
}

PixelBox tightened_source_crop(int img_w, int img_h, const std::vector<PixelBox>& boxes,
                               int padding, SeededRng& rng) {
  if (boxes.empty()) throw NoSalientObject("no salient component to crop from");
  const auto pick = rng.uniform_int(0, static_cast<std::int64_t>(boxes.size()) - 1);
  return boxes[static_cast<std::size_t>(pick)].padded_clamped(padding, img_w, img_h);
}

MaskIntegral::MaskIntegral(const BinaryMask& mask)
    : width_(mask.width()),
      sums_(static_cast<std::size_t>(mask.width() + 1) * (mask.height() + 1), 0) {
  const int stride = width_ + 1;
  for (int y = 0; y < mask.height(); ++y) {
    std::int64_t run = 0;
    for (int x = 0; x < width_; ++x) {
      run += mask.get(x, y) ? 1 : 0;
      sums_[(y + 1) * stride + x + 1] = sums_[y * stride + x + 1] + run;
    }
  }
  total_ = sums_.back();
}

std::int64_t MaskIntegral::count(const PixelBox& b) const noexcept {
  const int stride = width_ + 1;
  return sums_[b.y1() * stride + b.x1()] - sums_[b.y0() * stride + b.x1()] -
         sums_[b.y1() * stride + b.x0()] + sums_[b.y0() * stride + b.x0()];
}

OverlapCrop sample_overlap_crop(int img_w, int img_h, const MaskIntegral& salient,
                                const CropParams& p, double rho, SeededRng& rng) {
  if (salient.total() == 0) throw NoSalientObject("overlap crop needs at least one salient pixel");
  std::optional<OverlapCrop> best;
  const auto total = static_cast<double>(salient.total());
  for (int tryno = 0; tryno < p.max_rejection_tries; ++tryno) {
    const PixelBox box = sample_area_crop(img_w, img_h, p, rng);
    const std::int64_t inside = salient.count(box);
    const double coverage = static_cast<double>(inside) / total;
    if (static_cast<double>(inside) >= rho * total) return {box, coverage, true};
    if (!best || coverage > best->coverage) best = OverlapCrop{box, coverage, false};
  }
  return *best;
}

OverlapCrop sample_overlap_crop(const BinaryMask& salient, const CropParams& p, double rho,
                                SeededRng& rng) {
  return sample_overlap_crop(salient.width(), salient.height(), MaskIntegral(salient), p, rho, rng);
}

RasterImage rand_gray_background(const RasterImage& img, const BinaryMask& salient, SeededRng& rng) {
  if (!salient.matches(img)) throw GeometryError("saliency mask does not match image size");
  const auto g = static_cast<std::uint8_t>(rng.uniform_int(0, 255));
  RasterImage out = img;
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      if (salient.get(x, y)) continue;
      for (int c = 0; c < img.channels(); ++c) out.at(x, y, c) = g;
    }
  }
  return out;
}

}  // namespace viewforge
