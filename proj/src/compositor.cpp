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

#include "viewforge/compositor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "viewforge/core/resize.hpp"
#include "viewforge/error.hpp"
#include "viewforge/kernels.hpp"

namespace viewforge {
namespace {

// Per-item stream for one stage.
SeededRng item_stream(std::uint64_t item_seed, std::uint64_t tag) {
  return derive_stream(item_seed, 0, tag);
}

double salient_fraction(const MaskIntegral& integral, const PixelBox& box) {
  return static_cast<double>(integral.count(box)) / static_cast<double>(box.area());
}

// Salient mask of a source rectangle, resampled to `size`.
BinaryMask crop_salient_mask(const SaliencyMap& map, const PixelBox& box, Extent size,
                             double threshold) {
  const FloatImage scores = kernels::resize_bilinear(crop(map.as_image(), box), size.width, size.height);
  BinaryMask mask(size.width, size.height);
  for (int y = 0; y < size.height; ++y) {
    for (int x = 0; x < size.width; ++x) mask.set(x, y, scores.at(x, y) >= threshold);
  }
  return mask;
}

std::pair<int, int> sample_placement(Extent target, SeededRng& rng) {
  const auto x = rng.uniform_int(0, kCompositeSize - target.width);
  const auto y = rng.uniform_int(0, kCompositeSize - target.height);
  return {static_cast<int>(x), static_cast<int>(y)};
}

}  // namespace

std::string_view to_string(PolicyBranch b) {
  switch (b) {
    case PolicyBranch::kPoissonBlend: return "poisson_blend";
    case PolicyBranch::kTextureFlatten: return "texture_flatten";
    case PolicyBranch::kElastic: return "elastic";
    case PolicyBranch::kBaseline: return "baseline";
  }
  return "baseline";
}

void AugPolicy::validate() const {
  double sum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw ConfigError("policy.weights: every weight must be non-negative");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw ConfigError("policy.weights: must sum to 1, got " + std::to_string(sum));
  }
  if (tfns_enabled && rand_gray_enabled) {
    throw ConfigError("policy: tfns and rand_gray both replace the flattening branch; enable one");
  }
}

PolicyBranch AugPolicy::sample(SeededRng& rng) const {
  const double u = rng.uniform();
  double acc = 0.0;
  for (PolicyBranch b : kPolicyBranches) {
    acc += weight(b);
    if (u < acc) return b;
  }
  // Rounding left u above the accumulated sum: last branch with weight.
  for (auto it = kPolicyBranches.rbegin(); it != kPolicyBranches.rend(); ++it) {
    if (weight(*it) > 0.0) return *it;
  }
  return PolicyBranch::kBaseline;
}

void ViewConfig::validate() const {
  crop.validate();
  resize.validate();
  saliency.validate();
  policy.validate();
  appearance.validate();
  elastic.validate();
  solver.validate();
  if (resize.side_range.hi > kCompositeSize) {
    throw ConfigError("resize.side_range: upper bound exceeds the 256 px composite");
  }
}

RasterImage normalize_background(const RasterImage& img) {
  const int side = std::min(img.width(), img.height());
  const PixelBox square = PixelBox::from_size((img.width() - side) / 2, (img.height() - side) / 2,
                                              side, side);
  const RasterImage rgb = to_rgb(img);
  return resize_bilinear(side == img.width() && side == img.height() ? rgb : crop(rgb, square),
                         kCompositeSize, kCompositeSize);
}

Composite compose_view(const RasterImage& fg, const RasterImage& bg, Extent target,
                       std::pair<int, int> paste_xy, BlendMode blend,
                       const gdomain::SolverSettings& s, gdomain::CloneMode clone_mode) {
  const auto [px, py] = paste_xy;
  if (target.width < 1 || target.height < 1 || px < 0 || py < 0 ||
      px + target.width > bg.width() || py + target.height > bg.height()) {
    throw GeometryError("foreground target does not fit the background at the paste location");
  }
  const PixelBox roi = PixelBox::from_size(px, py, target.width, target.height);
  const RasterImage resized = resize_bilinear(fg, target.width, target.height);

  if (blend == BlendMode::kPaste) {
    RasterImage out = bg;
    for (int y = 0; y < target.height; ++y) {
      auto src = resized.row(y);
      std::ranges::copy(src, out.row(py + y).begin() + static_cast<std::ptrdiff_t>(px) * bg.channels());
    }
    return {std::move(out), roi};
  }

  // Poisson: Omega is the RoI minus its outer ring.
  BinaryMask region(target.width, target.height, false);
  for (int y = 1; y + 1 < target.height; ++y) {
    for (int x = 1; x + 1 < target.width; ++x) region.set(x, y);
  }
  RasterImage out = gdomain::seamless_clone(resized, bg, region, {px, py}, s, clone_mode);
  return {std::move(out), roi};
}

ViewPlan plan_view_pair(int src_w, int src_h, const SaliencyMap* saliency, const ViewConfig& cfg,
                        std::uint64_t item_seed) {
  ViewPlan plan;
  plan.item_seed = item_seed;
  plan.source_width = src_w;
  plan.source_height = src_h;
  plan.source_region = PixelBox::full(src_w, src_h);

  const SaliencyStrategy& sal = cfg.saliency;
  std::optional<BinaryMask> mask;
  if (sal.mode != SaliencyMode::kNone || cfg.policy.tfns_enabled || cfg.policy.rand_gray_enabled) {
    if (saliency == nullptr) {
      plan.warnings.emplace_back("no saliency map; saliency strategies disabled for this image");
    } else if (saliency->width() != src_w || saliency->height() != src_h) {
      plan.warnings.emplace_back("saliency map size differs from image; saliency strategies disabled");
    } else {
      mask = binarize(*saliency, sal.binarize_threshold);
      if (!mask->any()) {
        plan.warnings.emplace_back("saliency map has no salient pixel; saliency strategies disabled");
        mask.reset();
      }
    }
  }
  std::optional<MaskIntegral> integral;
  if (mask) integral.emplace(*mask);

  SeededRng source_rng = item_stream(item_seed, stage::kSourceCrop);
  CropSampler sampler;
  plan.saliency_mode = SaliencyMode::kNone;
  if (mask && (sal.mode == SaliencyMode::kTightened || sal.mode == SaliencyMode::kObjectCrop)) {
    const auto boxes = extract_object_boxes(*mask, sal.min_component_area);
    if (boxes.empty()) {
      plan.warnings.emplace_back("no salient component above min_component_area; using full image");
    } else {
      plan.source_region = tightened_source_crop(src_w, src_h, boxes, sal.box_padding, source_rng);
      plan.saliency_mode = sal.mode;
    }
  } else if (mask && sal.mode == SaliencyMode::kOverlapConstraint) {
    plan.saliency_mode = sal.mode;
    sampler = [&, rho = sal.overlap_fraction](SeededRng& r) {
      return sample_overlap_crop(src_w, src_h, *integral, cfg.crop, rho, r).box;
    };
  }
  if (!sampler) {
    const PixelBox region = plan.source_region;
    sampler = [&cfg, region](SeededRng& r) {
      return sample_area_crop(region.width(), region.height(), cfg.crop, r)
          .translated(region.x0(), region.y0());
    };
  }

  SeededRng pair_rng = item_stream(item_seed, stage::kCropPair);
  const CropPair pair = sample_constrained_pair(sampler, cfg.crop, pair_rng);
  plan.query_crop = pair.query;
  plan.key_crop = pair.key;
  plan.iou = pair.iou;
  plan.constraint_satisfied = pair.satisfied;
  plan.pair_tries = pair.tries;
  if (!pair.satisfied) {
    plan.warnings.emplace_back("iou constraint not met after max_rejection_tries; kept best pair");
  }
  if (integral) {
    plan.query_salient_frac = salient_fraction(*integral, pair.query);
    plan.key_salient_frac = salient_fraction(*integral, pair.key);
  }

  SeededRng policy_rng = item_stream(item_seed, stage::kPolicy);
  plan.branch = cfg.policy.sample(policy_rng);

  SeededRng qt = item_stream(item_seed, stage::kQueryTarget);
  SeededRng kt = item_stream(item_seed, stage::kKeyTarget);
  plan.query_target = sample_resize_target(cfg.resize, qt);
  plan.key_target = sample_resize_target(cfg.resize, kt);
  SeededRng qp = item_stream(item_seed, stage::kQueryPlacement);
  SeededRng kp = item_stream(item_seed, stage::kKeyPlacement);
  plan.query_paste = sample_placement(plan.query_target, qp);
  plan.key_paste = sample_placement(plan.key_target, kp);
  return plan;
}

ViewPairRecord make_view_pair(const RasterImage& src_in, const SaliencyMap* saliency,
                              const ViewConfig& cfg,
                              std::pair<const RasterImage*, const RasterImage*> backgrounds,
                              std::uint64_t item_seed) {
  const auto* bg_q = backgrounds.first;
  const auto* bg_k = backgrounds.second;
  for (const RasterImage* bg : {bg_q, bg_k}) {
    if (bg == nullptr || bg->width() != kCompositeSize || bg->height() != kCompositeSize ||
        bg->channels() != 3) {
      throw GeometryError("backgrounds must be normalized 256x256 RGB images");
    }
  }
  const RasterImage src = to_rgb(src_in);

  ViewPairRecord rec;
  rec.item_seed = item_seed;
  rec.plan = plan_view_pair(src.width(), src.height(), saliency, cfg, item_seed);
  const ViewPlan& plan = rec.plan;
  rec.warnings = plan.warnings;
  rec.iou_achieved = plan.iou;
  rec.constraint_satisfied = plan.constraint_satisfied;
  rec.strategy_used.emplace_back("saliency:" + std::string(to_string(plan.saliency_mode)));

  const bool have_saliency = plan.query_salient_frac.has_value();
  RasterImage query = resize_bilinear(crop(src, plan.query_crop), plan.query_target.width,
                                      plan.query_target.height);
  RasterImage key = resize_bilinear(crop(src, plan.key_crop), plan.key_target.width,
                                    plan.key_target.height);

  // Shortcut-reducing augmentation, query only.
  SeededRng shortcut_rng = item_stream(item_seed, stage::kQueryShortcut);
  BlendMode query_blend = BlendMode::kPaste;
  switch (plan.branch) {
    case PolicyBranch::kPoissonBlend:
      query_blend = BlendMode::kPoisson;
      rec.strategy_used.emplace_back("poisson_blend");
      break;
    case PolicyBranch::kTextureFlatten: {
      const bool restricted = cfg.policy.tfns_enabled || cfg.policy.rand_gray_enabled;
      if (restricted && !have_saliency) {
        rec.warnings.emplace_back("salient-region variant unavailable; applied full texture flattening");
      }
      try {
        if (restricted && have_saliency) {
          const BinaryMask salient = crop_salient_mask(*saliency, plan.query_crop, plan.query_target,
                                                       cfg.saliency.binarize_threshold);
          if (cfg.policy.tfns_enabled) {
            query = gdomain::texture_flatten_region(query, salient, cfg.edges, cfg.solver);
            rec.strategy_used.emplace_back("tfns");
          } else {
            query = rand_gray_background(query, salient, shortcut_rng);
            rec.strategy_used.emplace_back("rand_gray_bg");
          }
        } else {
          query = gdomain::texture_flatten(query, cfg.edges, cfg.solver);
          rec.strategy_used.emplace_back("texture_flatten");
        }
      } catch (const NoConvergence& e) {
        rec.warnings.emplace_back(std::string("texture flattening skipped: ") + e.what());
        rec.strategy_used.emplace_back("texture_flatten_failed");
      }
      break;
    }
    case PolicyBranch::kElastic:
      query = elastic_deform(query, cfg.elastic, shortcut_rng);
      rec.strategy_used.emplace_back("elastic");
      break;
    case PolicyBranch::kBaseline:
      rec.strategy_used.emplace_back("baseline");
      break;
  }

  SeededRng qa = item_stream(item_seed, stage::kQueryAppearance);
  SeededRng ka = item_stream(item_seed, stage::kKeyAppearance);
  std::vector<std::string> q_steps, k_steps;
  query = apply_appearance(query, cfg.appearance, qa, &q_steps);
  key = apply_appearance(key, cfg.appearance, ka, &k_steps);
  for (const auto& s : q_steps) rec.strategy_used.push_back("query:" + s);
  for (const auto& s : k_steps) rec.strategy_used.push_back("key:" + s);

  Composite qc{RasterImage(), PixelBox(0, 0, 1, 1)};
  try {
    qc = compose_view(query, *bg_q, plan.query_target, plan.query_paste, query_blend, cfg.solver,
                      cfg.policy.clone_mode);
  } catch (const NoConvergence& e) {
    rec.warnings.emplace_back(std::string("poisson blend fell back to paste: ") + e.what());
    rec.strategy_used.emplace_back("poisson_blend_failed");
    qc = compose_view(query, *bg_q, plan.query_target, plan.query_paste, BlendMode::kPaste, cfg.solver);
  }
  Composite kc = compose_view(key, *bg_k, plan.key_target, plan.key_paste, BlendMode::kPaste, cfg.solver);

  rec.query_img = std::move(qc.image);
  rec.query_box = qc.roi;
  rec.key_img = std::move(kc.image);
  rec.key_box = kc.roi;
  return rec;
}

std::pair<std::size_t, std::size_t> choose_backgrounds(std::size_t corpus_size, std::size_t source,
                                                       SeededRng& rng) {
  if (corpus_size <= 1) return {source, source};
  std::vector<std::size_t> others;
  others.reserve(corpus_size - 1);
  for (std::size_t i = 0; i < corpus_size; ++i) {
    if (i != source) others.push_back(i);
  }
  if (others.size() == 1) return {others[0], others[0]};
  const auto a = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(others.size()) - 1));
  auto b = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(others.size()) - 2));
  if (b >= a) ++b;
  return {others[a], others[b]};
}

}  // namespace viewforge
