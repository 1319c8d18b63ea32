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

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "viewforge/core/box.hpp"
#include "viewforge/core/raster.hpp"
#include "viewforge/core/rng.hpp"
#include "viewforge/cropper.hpp"
#include "viewforge/gdomain.hpp"
#include "viewforge/saliency.hpp"
#include "viewforge/warp.hpp"

namespace viewforge {

inline constexpr int kCompositeSize = 256;

enum class PolicyBranch { kPoissonBlend = 0, kTextureFlatten = 1, kElastic = 2, kBaseline = 3 };
inline constexpr std::array<PolicyBranch, 4> kPolicyBranches = {
    PolicyBranch::kPoissonBlend, PolicyBranch::kTextureFlatten, PolicyBranch::kElastic,
    PolicyBranch::kBaseline};

std::string_view to_string(PolicyBranch b);

// Mixing policy for the shortcut-reducing augmentation applied to the query
// crop. With tfns_enabled (or rand_gray_enabled) the texture_flatten branch
// runs the saliency-restricted variant instead.
struct AugPolicy {
  std::array<double, 4> weights{0.0, 0.0, 0.0, 1.0};  // indexed by PolicyBranch
  bool tfns_enabled = false;
  bool rand_gray_enabled = false;
  gdomain::CloneMode clone_mode = gdomain::CloneMode::kImportGradients;

  double weight(PolicyBranch b) const { return weights[static_cast<std::size_t>(b)]; }
  void validate() const;
  PolicyBranch sample(SeededRng& rng) const;
};

// Everything needed to turn one source image into a view pair.
struct ViewConfig {
  CropParams crop;
  ResizeTargetParams resize;
  SaliencyStrategy saliency;
  AugPolicy policy;
  AppearanceParams appearance;
  ElasticParams elastic;
  gdomain::SolverSettings solver;
  gdomain::EdgeThresholds edges;

  void validate() const;
};

enum class BlendMode { kPaste, kPoisson };

struct Composite {
  RasterImage image;
  PixelBox roi;
};

// Square centre crop, then bilinear resize to 256x256.
RasterImage normalize_background(const RasterImage& img);

// Resizes fg to `target` and commits it onto bg at paste_xy by copy or by
// seamless cloning. Throws GeometryError if the target does not fit.
Composite compose_view(const RasterImage& fg, const RasterImage& bg, Extent target,
                       std::pair<int, int> paste_xy, BlendMode blend,
                       const gdomain::SolverSettings& s,
                       gdomain::CloneMode clone_mode = gdomain::CloneMode::kImportGradients);

// Pure geometry and strategy decisions for one item; no pixels touched.
struct ViewPlan {
  std::uint64_t item_seed = 0;
  int source_width = 0;
  int source_height = 0;
  SaliencyMode saliency_mode = SaliencyMode::kNone;  // mode actually used
  PixelBox source_region{0, 0, 1, 1};                // crop source, source coordinates
  PixelBox query_crop{0, 0, 1, 1};                   // source coordinates
  PixelBox key_crop{0, 0, 1, 1};
  double iou = 0.0;
  bool constraint_satisfied = true;
  int pair_tries = 0;
  std::optional<double> query_salient_frac;
  std::optional<double> key_salient_frac;
  PolicyBranch branch = PolicyBranch::kBaseline;
  Extent query_target{1, 1};
  Extent key_target{1, 1};
  std::pair<int, int> query_paste{0, 0};
  std::pair<int, int> key_paste{0, 0};
  std::vector<std::string> warnings;
};

ViewPlan plan_view_pair(int src_w, int src_h, const SaliencyMap* saliency, const ViewConfig& cfg,
                        std::uint64_t item_seed);

struct ViewPairRecord {
  RasterImage query_img;
  RasterImage key_img;
  PixelBox query_box{0, 0, 1, 1};  // pasted RoI inside the query composite
  PixelBox key_box{0, 0, 1, 1};
  std::string source_path;
  std::uint64_t item_index = 0;
  std::uint64_t item_seed = 0;
  std::vector<std::string> strategy_used;
  double iou_achieved = 0.0;
  bool constraint_satisfied = true;
  ViewPlan plan;
  std::vector<std::string> warnings;
};

// Backgrounds must already be 256x256 (see normalize_background). The query
// crop alone receives the policy branch; both crops receive independent
// appearance augmentation.
ViewPairRecord make_view_pair(const RasterImage& src, const SaliencyMap* saliency,
                              const ViewConfig& cfg,
                              std::pair<const RasterImage*, const RasterImage*> backgrounds,
                              std::uint64_t item_seed);

// Two distinct corpus indices other than `source`, drawn without replacement.
// Falls back to repeats (or the source itself) on corpora that are too small.
std::pair<std::size_t, std::size_t> choose_backgrounds(std::size_t corpus_size, std::size_t source,
                                                       SeededRng& rng);

}  // namespace viewforge
