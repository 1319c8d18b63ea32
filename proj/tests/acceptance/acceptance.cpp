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

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "viewforge/compositor.hpp"
#include "viewforge/core/resize.hpp"
#include "viewforge/cropper.hpp"
#include "viewforge/gdomain.hpp"
#include "viewforge/pipeline/config.hpp"
#include "viewforge/pipeline/engine.hpp"
#include "viewforge/saliency.hpp"
#include "viewforge/warp.hpp"

namespace vf = viewforge;
namespace gd = viewforge::gdomain;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

struct Criterion {
  std::string name;
  double budget_s;
  std::function<Outcome()> run;
};

class Check {
 public:
  void expect(bool cond, const std::string& what) {
    if (!cond && ok_) {
      ok_ = false;
      first_ = what;
    }
    if (!cond) ++failures_;
  }
  Outcome done(const std::string& summary) const {
    if (ok_) return {true, summary};
    std::ostringstream os;
    os << failures_ << " violation(s), first: " << first_ << "; " << summary;
    return {false, os.str()};
  }

 private:
  bool ok_ = true;
  int failures_ = 0;
  std::string first_;
};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(4);
  os << v;
  return os.str();
}

vf::RasterImage textured(int w, int h, std::uint64_t seed) {
  vf::RasterImage img(w, h, 3);
  vf::SeededRng rng(seed, 0x7e);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      for (int c = 0; c < 3; ++c)
        img.at(x, y, c) = vf::clamp_to_byte(120 + 60 * std::sin(0.5 * x + c) * std::cos(0.3 * y) + rng.uniform(-30, 30));
  return img;
}

vf::ViewConfig mixed_config() {
  vf::ViewConfig cfg;
  cfg.policy.weights = {0.25, 0.25, 0.25, 0.25};
  return cfg;
}

vf::ViewConfig branch_only(vf::PolicyBranch b) {
  vf::ViewConfig cfg;
  cfg.policy.weights = {0, 0, 0, 0};
  cfg.policy.weights[static_cast<std::size_t>(b)] = 1.0;
  cfg.appearance = vf::AppearanceParams::disabled();
  return cfg;
}

vf::RasterImage resized_crop(const vf::RasterImage& src, const vf::PixelBox& box, vf::Extent t) {
  return vf::resize_bilinear(vf::crop(src, box), t.width, t.height);
}

bool has(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

Outcome poisson_oracle() {
  Check chk;
  gd::SolverSettings s;
  s.tolerance = 1e-10;
  double worst = 0.0;
  const int n = 100;
  for (std::uint64_t seed = 0; seed < n; ++seed) {
    const auto inst = vf::testing::random_poisson_instance(seed, seed % 3 == 0 ? 3 : 1);
    const vf::FloatImage oracle = vf::testing::dense_poisson(inst.domain, inst.guidance);
    const gd::PoissonSolution sol = gd::solve_poisson(inst.domain, inst.guidance, s);
    const double d = vf::testing::max_abs_diff(sol.values, oracle);
    worst = std::max(worst, d);
    chk.expect(d <= 1e-6, "seed " + std::to_string(seed) + " diff " + fmt(d));
  }
  return chk.done(std::to_string(n) + " domains, max diff " + fmt(worst));
}

Outcome clone_identities() {
  Check chk;
  const gd::SolverSettings s;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const int w = 40 + 4 * static_cast<int>(seed), h = 30 + 3 * static_cast<int>(seed);
    const vf::RasterImage dst = textured(w, h, seed);
    vf::BinaryMask region(w, h);
    for (int y = 3; y < h - 3; ++y)
      for (int x = 4; x < w - 4; ++x) region.set(x, y, (x * 3 + y + static_cast<int>(seed)) % 7 != 0);
    auto [domain, guidance] = gd::seamless_clone_system(dst, dst, region, {}, gd::CloneMode::kImportGradients);
    const gd::PoissonSolution sol = gd::solve_poisson(domain, guidance, s);
    const double d = vf::testing::max_abs_diff(sol.values, vf::FloatImage::from(dst));
    chk.expect(d <= 1e-4, "self-clone seed " + std::to_string(seed) + " diff " + fmt(d));
    chk.expect(gd::seamless_clone(dst, dst, region, {}, s) == dst, "self-clone bytes seed " + std::to_string(seed));

    const vf::RasterImage src = textured(24, 18, seed + 50);
    vf::BinaryMask patch(24, 18);
    for (int y = 2; y < 16; ++y)
      for (int x = 2; x < 22; ++x) patch.set(x, y, (x + y) % 9 != 0);
    const gd::Offset off{5 + static_cast<int>(seed), 4 + static_cast<int>(seed) / 2};
    const vf::RasterImage out = gd::seamless_clone(src, dst, patch, off, s);
    bool outside_equal = true;
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) {
        const int sx = x - off.dx, sy = y - off.dy;
        if (sx >= 0 && sy >= 0 && sx < 24 && sy < 18 && patch.get(sx, sy)) continue;
        for (int c = 0; c < 3; ++c) outside_equal = outside_equal && out.at(x, y, c) == dst.at(x, y, c);
      }
    chk.expect(outside_equal, "outside pixels changed, seed " + std::to_string(seed));

    const auto a = static_cast<std::uint8_t>(10 + 20 * seed), b = static_cast<std::uint8_t>(240 - 15 * seed);
    const vf::RasterImage csrc(12, 10, 3, a);
    const vf::RasterImage cdst(30, 26, 3, b);
    const vf::RasterImage cout = gd::seamless_clone(csrc, cdst, vf::BinaryMask(12, 10, true), {7, 8}, s);
    chk.expect(cout == cdst, "constant-onto-constant seed " + std::to_string(seed));
  }
  return chk.done("10 self-clones, 10 offset clones, 10 constant clones");
}

Outcome flatten_contracts() {
  Check chk;
  const gd::SolverSettings s;
  for (int v : {0, 77, 255}) {
    const vf::RasterImage img(34, 26, 3, static_cast<std::uint8_t>(v));
    chk.expect(gd::texture_flatten(img, {}, s) == img, "constant " + std::to_string(v));
  }
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const vf::RasterImage img = textured(64, 48, seed + 20);
    const vf::BinaryMask edges(64, 48, true);
    const gd::PoissonSolution sol = gd::texture_flatten_region_solve(img, vf::BinaryMask(64, 48), edges, s);
    const double d = vf::testing::max_abs_diff(sol.values, vf::FloatImage::from(img));
    chk.expect(d <= 1e-4, "all-edges diff " + fmt(d));
  }
  vf::RasterImage step(60, 40, 3);
  vf::SeededRng rng(5, 5);
  for (int y = 0; y < 40; ++y)
    for (int x = 0; x < 60; ++x)
      for (int c = 0; c < 3; ++c) step.at(x, y, c) = static_cast<std::uint8_t>((x < 30 ? 40 : 200) + rng.uniform_int(0, 3));
  const vf::BinaryMask edges = gd::detect_edges(step);
  chk.expect(edges.any(), "step edge not detected");
  const gd::PoissonSolution sol = gd::texture_flatten_region_solve(step, vf::BinaryMask(60, 40), edges, s);
  double worst = 0.0;
  int checked = 0;
  for (int y = 1; y < 39; ++y)
    for (int x = 1; x < 59; ++x) {
      if (edges.get(x, y) || edges.get(x - 1, y) || edges.get(x + 1, y) || edges.get(x, y - 1) || edges.get(x, y + 1))
        continue;
      ++checked;
      for (int c = 0; c < 3; ++c) {
        const double lap = 4 * sol.values.at(x, y, c) - sol.values.at(x - 1, y, c) - sol.values.at(x + 1, y, c) -
                           sol.values.at(x, y - 1, c) - sol.values.at(x, y + 1, c);
        worst = std::max(worst, std::abs(lap));
      }
    }
  chk.expect(worst <= s.tolerance, "laplacian " + fmt(worst));
  return chk.done(std::to_string(checked) + " off-edge pixels, max |laplacian| " + fmt(worst));
}

Outcome tfns_contracts() {
  Check chk;
  const gd::SolverSettings s;
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const int w = 56 + 8 * static_cast<int>(seed), h = 48;
    const vf::RasterImage img = textured(w, h, seed + 30);
    chk.expect(gd::texture_flatten_region(img, vf::BinaryMask(w, h, true), gd::EdgeThresholds{}, s) == img,
               "all-true identity");

    const vf::BinaryMask edges = gd::detect_edges(img);
    const vf::FloatImage f = vf::FloatImage::from(img);
    const gd::PoissonSolution none = gd::texture_flatten_region_solve(img, vf::BinaryMask(w, h), edges, s);
    const vf::BinaryMask full_omega = gd::flatten_domain(w, h, nullptr);
    const gd::PoissonSolution full =
        gd::solve_poisson(gd::SolveDomain(full_omega, f), gd::edge_masked_gradients(f, full_omega, edges), s, &f);
    const double d = vf::testing::max_abs_diff(none.values, full.values);
    chk.expect(d <= 1e-4, "all-false vs full flatten " + fmt(d));

    const vf::BinaryMask salient = vf::testing::disc_mask(w, h, w / 2, h / 2 - 2, 10 + static_cast<int>(seed));
    const vf::RasterImage out = gd::texture_flatten_region(img, salient, edges, s);
    bool kept = true;
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x)
        if (salient.get(x, y))
          for (int c = 0; c < 3; ++c) kept = kept && out.at(x, y, c) == img.at(x, y, c);
    chk.expect(kept, "salient pixel changed");

    const gd::PoissonSolution sol = gd::texture_flatten_region_solve(img, salient, edges, s);
    const vf::BinaryMask omega = gd::flatten_domain(w, h, &salient);
    const vf::FloatImage res =
        gd::equation_residual(gd::SolveDomain(omega, f), gd::edge_masked_gradients(f, omega, edges), sol.values);
    double worst = 0.0;
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x)
        if (omega.get(x, y))
          for (int c = 0; c < 3; ++c) worst = std::max(worst, std::abs(res.at(x, y, c)));
    chk.expect(worst <= s.tolerance, "residual " + fmt(worst));
  }
  return chk.done("4 images");
}

Outcome crop_statistics() {
  Check chk;
  vf::CropParams p;
  p.min_area_frac = 0.45;
  vf::SeededRng rng(2024, vf::stage::kCropPair);
  const int W = 640, H = 480;
  const int draws = 100000;
  double sum = 0.0, lo = 1.0, hi = 0.0;
  for (int i = 0; i < draws; ++i) {
    const vf::PixelBox b = vf::sample_area_crop(W, H, p, rng);
    const double frac = static_cast<double>(b.area()) / (static_cast<double>(W) * H);
    chk.expect(b.fits_in(W, H), "crop out of bounds");
    chk.expect(frac >= 0.45 && frac <= 1.0, "area fraction " + fmt(frac));
    lo = std::min(lo, frac);
    hi = std::max(hi, frac);
    sum += frac;
  }
  const double mean = sum / draws;
  chk.expect(std::abs(mean - 0.725) <= 0.01, "mean area fraction " + fmt(mean));

  vf::CropParams t;
  t.iou_threshold = 0.7;
  vf::SeededRng prng(2025, vf::stage::kCropPair);
  const int pairs = 10000;
  int satisfied = 0;
  double min_iou = 1.0;
  for (int i = 0; i < pairs; ++i) {
    const vf::CropPair cp = vf::sample_constrained_pair(W, H, t, prng);
    chk.expect(cp.iou == vf::iou(cp.query, cp.key), "reported iou differs from boxes");
    if (!cp.satisfied) continue;
    ++satisfied;
    min_iou = std::min(min_iou, cp.iou);
    chk.expect(cp.iou >= 0.7, "satisfied pair iou " + fmt(cp.iou));
  }
  return chk.done("mean " + fmt(mean) + " range [" + fmt(lo) + ", " + fmt(hi) + "]; " + std::to_string(satisfied) +
                  "/" + std::to_string(pairs) + " satisfied, min iou " + fmt(min_iou));
}

Outcome saliency_boxes() {
  Check chk;
  std::size_t boxes = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const vf::BinaryMask m = vf::testing::random_mask(seed);
    for (int min_area : {1, 4}) {
      std::vector<std::tuple<int, int, int, int, std::size_t>> got;
      for (const auto& c : vf::extract_object_components(m, min_area))
        got.emplace_back(c.box.x0(), c.box.y0(), c.box.x1(), c.box.y1(), c.pixel_count);
      std::sort(got.begin(), got.end());
      const auto want = vf::testing::flood_fill_box_set(m, min_area);
      chk.expect(got == want, "mask " + std::to_string(seed) + " min_area " + std::to_string(min_area));
      boxes += want.size();
    }
  }
  return chk.done("100 masks, " + std::to_string(boxes) + " boxes");
}

Outcome policy_mixing() {
  Check chk;
  const vf::ViewConfig cfg = mixed_config();
  const vf::RasterImage src = vf::testing::synthetic_image(320, 240, 4);
  const vf::RasterImage bg_q = vf::normalize_background(vf::testing::synthetic_image(400, 300, 5));
  const vf::RasterImage bg_k = vf::normalize_background(vf::testing::synthetic_image(300, 360, 6));
  const std::map<vf::PolicyBranch, std::string> tag{{vf::PolicyBranch::kPoissonBlend, "poisson_blend"},
                                                    {vf::PolicyBranch::kTextureFlatten, "texture_flatten"},
                                                    {vf::PolicyBranch::kElastic, "elastic"},
                                                    {vf::PolicyBranch::kBaseline, "baseline"}};
  const int n = 10000;
  const int rendered_every = 50;
  std::array<int, 4> counts{};
  int rendered = 0;
  for (int i = 0; i < n; ++i) {
    const std::uint64_t seed = vf::pipeline::item_seed_for(99, static_cast<std::uint64_t>(i));
    const vf::ViewPlan plan = vf::plan_view_pair(src.width(), src.height(), nullptr, cfg, seed);
    ++counts[static_cast<std::size_t>(plan.branch)];
    if (i % rendered_every != 0) continue;
    const vf::ViewPairRecord rec = vf::make_view_pair(src, nullptr, cfg, {&bg_q, &bg_k}, seed);
    ++rendered;
    chk.expect(rec.plan.branch == plan.branch, "rendered branch differs from plan");
    chk.expect(has(rec.strategy_used, tag.at(plan.branch)), "strategy tag missing for " + tag.at(plan.branch));
  }
  std::string summary;
  for (std::size_t b = 0; b < 4; ++b) {
    const double f = static_cast<double>(counts[b]) / n;
    chk.expect(std::abs(f - 0.25) <= 0.02, tag.at(static_cast<vf::PolicyBranch>(b)) + " frequency " + fmt(f));
    summary += tag.at(static_cast<vf::PolicyBranch>(b)) + "=" + fmt(f) + " ";
  }
  return chk.done(summary + "(" + std::to_string(rendered) + " rendered)");
}

Outcome query_only() {
  Check chk;
  const vf::RasterImage src = vf::testing::synthetic_image(300, 220, 7);
  const vf::SaliencyMap sal = vf::SaliencyMap::from_gray(vf::testing::synthetic_saliency(300, 220, 7));
  const vf::RasterImage bg_q = vf::normalize_background(vf::testing::synthetic_image(400, 300, 8));
  const vf::RasterImage bg_k = vf::normalize_background(vf::testing::synthetic_image(280, 350, 9));
  struct Variant {
    vf::PolicyBranch branch;
    bool tfns;
    bool rand_gray;
    vf::SaliencyMode mode;
  };
  const std::vector<Variant> variants{
      {vf::PolicyBranch::kPoissonBlend, false, false, vf::SaliencyMode::kNone},
      {vf::PolicyBranch::kTextureFlatten, false, false, vf::SaliencyMode::kNone},
      {vf::PolicyBranch::kTextureFlatten, true, false, vf::SaliencyMode::kNone},
      {vf::PolicyBranch::kTextureFlatten, false, true, vf::SaliencyMode::kNone},
      {vf::PolicyBranch::kElastic, false, false, vf::SaliencyMode::kNone},
      {vf::PolicyBranch::kBaseline, false, false, vf::SaliencyMode::kNone},
      {vf::PolicyBranch::kPoissonBlend, false, false, vf::SaliencyMode::kTightened},
      {vf::PolicyBranch::kElastic, false, false, vf::SaliencyMode::kOverlapConstraint},
      {vf::PolicyBranch::kTextureFlatten, true, false, vf::SaliencyMode::kObjectCrop},
  };
  int pairs = 0;
  for (const auto& v : variants) {
    vf::ViewConfig cfg = branch_only(v.branch);
    cfg.policy.tfns_enabled = v.tfns;
    cfg.policy.rand_gray_enabled = v.rand_gray;
    cfg.saliency.mode = v.mode;
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
      const vf::ViewPairRecord rec = vf::make_view_pair(src, &sal, cfg, {&bg_q, &bg_k}, seed * 7919 + 1);
      ++pairs;
      chk.expect(vf::crop(rec.key_img, rec.key_box) == resized_crop(src, rec.plan.key_crop, rec.plan.key_target),
                 std::string(vf::to_string(v.branch)) + " key differs, seed " + std::to_string(seed));
    }
  }
  return chk.done(std::to_string(pairs) + " pairs over " + std::to_string(variants.size()) + " variants");
}

Outcome composite_geometry() {
  Check chk;
  vf::ViewConfig cfg = mixed_config();
  cfg.appearance = vf::AppearanceParams::disabled();
  std::vector<vf::RasterImage> sources;
  std::vector<vf::RasterImage> backgrounds;
  for (int i = 0; i < 8; ++i) {
    vf::SeededRng rng(31, static_cast<std::uint64_t>(i));
    const int w = static_cast<int>(rng.uniform_int(160, 400));
    const int h = static_cast<int>(rng.uniform_int(120, 320));
    sources.push_back(vf::testing::synthetic_image(w, h, 1000 + i));
    backgrounds.push_back(vf::normalize_background(sources.back()));
  }
  const int n = 1000;
  int paste_checked = 0;
  for (int i = 0; i < n; ++i) {
    const std::uint64_t seed = vf::pipeline::item_seed_for(31, static_cast<std::uint64_t>(i));
    const std::size_t s = static_cast<std::size_t>(i) % sources.size();
    vf::SeededRng bg_rng = vf::derive_stream(31, static_cast<std::uint64_t>(i), vf::stage::kBackgrounds);
    const auto [bq, bk] = vf::choose_backgrounds(sources.size(), s, bg_rng);
    const vf::ViewPairRecord rec =
        vf::make_view_pair(sources[s], nullptr, cfg, {&backgrounds[bq], &backgrounds[bk]}, seed);
    const std::string at = " at pair " + std::to_string(i);
    for (const vf::RasterImage* img : {&rec.query_img, &rec.key_img})
      chk.expect(img->width() == 256 && img->height() == 256 && img->channels() == 3, "composite size" + at);
    chk.expect(rec.query_box.fits_in(256, 256) && rec.key_box.fits_in(256, 256), "roi out of bounds" + at);
    chk.expect(rec.query_box.width() == rec.plan.query_target.width &&
                   rec.query_box.height() == rec.plan.query_target.height,
               "query roi size" + at);
    chk.expect(rec.plan.query_crop.fits_in(sources[s].width(), sources[s].height()) &&
                   rec.plan.key_crop.fits_in(sources[s].width(), sources[s].height()),
               "crop out of source" + at);
    chk.expect(vf::crop(rec.key_img, rec.key_box) == resized_crop(sources[s], rec.plan.key_crop, rec.plan.key_target),
               "key paste region" + at);
    ++paste_checked;
    const bool query_pasted = rec.plan.branch == vf::PolicyBranch::kBaseline || has(rec.strategy_used, "poisson_blend_failed");
    if (query_pasted) {
      chk.expect(vf::crop(rec.query_img, rec.query_box) ==
                     resized_crop(sources[s], rec.plan.query_crop, rec.plan.query_target),
                 "query paste region" + at);
      ++paste_checked;
    }
  }
  return chk.done(std::to_string(n) + " pairs, " + std::to_string(paste_checked) + " paste regions compared");
}

Outcome determinism() {
  Check chk;
  vf::testing::TempDir tmp("acceptance-determinism");
  const fs::path in = tmp.path() / "in";
  vf::testing::write_corpus(in, 20, 77);
  const std::string base = "input_dir: " + in.string() +
                           "\nmaster_seed: 11\npairs_per_image: 10\n"
                           "policy: {poisson_blend: 0.25, texture_flatten: 0.25, elastic: 0.25, baseline: 0.25}\n";
  std::vector<std::string> hashes;
  std::size_t emitted = 0;
  for (const auto& [dir, workers] : std::vector<std::pair<std::string, int>>{{"a", 1}, {"b", 1}, {"c", 8}}) {
    const vf::pipeline::PipelineConfig cfg = vf::pipeline::parse_config(
        base + "output_dir: " + (tmp.path() / dir).string() + "\nworkers: " + std::to_string(workers) + "\n");
    emitted = vf::pipeline::run_generate(cfg).pairs_emitted;
    chk.expect(emitted == 200, "pairs emitted " + std::to_string(emitted));
    hashes.push_back(vf::testing::directory_hash(cfg.output_dir));
  }
  chk.expect(hashes[0] == hashes[1], "repeat run differs");
  chk.expect(hashes[0] == hashes[2], "workers=8 differs");
  return chk.done("200 pairs x3, sha256 " + hashes[0].substr(0, 16));
}

Outcome elastic_contracts() {
  Check chk;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const vf::RasterImage img = vf::testing::synthetic_image(30 + 3 * static_cast<int>(seed), 25 + static_cast<int>(seed), seed);
    vf::SeededRng rng(seed, 3);
    chk.expect(vf::elastic_deform(img, vf::ElasticParams{0.0, 1.0 + 0.3 * static_cast<double>(seed)}, rng) == img,
               "alpha=0 changed image, seed " + std::to_string(seed));
  }
  vf::SeededRng rng(13, 13);
  double worst_ratio = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const vf::ElasticParams p{rng.uniform(0.0, 60.0), rng.uniform(0.5, 8.0)};
    const int w = static_cast<int>(rng.uniform_int(2, 32));
    const int h = static_cast<int>(rng.uniform_int(2, 32));
    const vf::DisplacementField f = vf::elastic_displacement(w, h, p, rng);
    double m = 0.0;
    for (double v : f.dx.data()) m = std::max(m, std::abs(v));
    for (double v : f.dy.data()) m = std::max(m, std::abs(v));
    chk.expect(m <= p.alpha, "displacement " + fmt(m) + " > alpha " + fmt(p.alpha));
    if (p.alpha > 0) worst_ratio = std::max(worst_ratio, m / p.alpha);
  }
  return chk.done("20 identities, 1000 fields, max |d|/alpha " + fmt(worst_ratio));
}

Outcome rand_gray() {
  Check chk;
  std::set<int> grays;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    vf::RasterImage img(64, 64, 3);
    vf::SeededRng fill(seed, 21);
    for (auto& v : img.data()) v = static_cast<std::uint8_t>(fill.uniform_int(0, 255));
    const vf::BinaryMask m = vf::testing::random_mask(seed);
    vf::SeededRng rng(seed, 22);
    const vf::RasterImage out = vf::rand_gray_background(img, m, rng);
    bool kept = true, single = true;
    std::optional<std::array<std::uint8_t, 3>> triplet;
    for (int y = 0; y < 64; ++y)
      for (int x = 0; x < 64; ++x) {
        const std::array<std::uint8_t, 3> px{out.at(x, y, 0), out.at(x, y, 1), out.at(x, y, 2)};
        if (m.get(x, y)) {
          for (int c = 0; c < 3; ++c) kept = kept && px[c] == img.at(x, y, c);
        } else {
          if (!triplet) triplet = px;
          single = single && px == *triplet;
        }
      }
    chk.expect(kept, "salient pixel changed, seed " + std::to_string(seed));
    chk.expect(single, "background not one triplet, seed " + std::to_string(seed));
    if (triplet) {
      chk.expect((*triplet)[0] == (*triplet)[1] && (*triplet)[1] == (*triplet)[2], "triplet not gray");
      grays.insert((*triplet)[0]);
    }
  }
  return chk.done("200 masks, " + std::to_string(grays.size()) + " distinct grays");
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"poisson solver matches dense oracle", 10, poisson_oracle},
      {"seamless clone identities", 5, clone_identities},
      {"texture flatten contracts", 10, flatten_contracts},
      {"salient-region flatten contracts", 10, tfns_contracts},
      {"crop sampler statistics", 30, crop_statistics},
      {"saliency boxes match flood fill", 5, saliency_boxes},
      {"policy branch mixing", 120, policy_mixing},
      {"query-only augmentation", 60, query_only},
      {"composite geometry", 120, composite_geometry},
      {"end-to-end determinism", 180, determinism},
      {"elastic contracts", 10, elastic_contracts},
      {"random gray background", 5, rand_gray},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_budget = secs < c.budget_s;
    const bool pass = o.ok && in_budget;
    failed += !pass;
    std::printf("[%s] %-38s %8.2f s / %5.0f s  %s%s\n", pass ? "PASS" : "FAIL", c.name.c_str(), secs, c.budget_s,
                o.detail.c_str(), in_budget ? "" : " (over budget)");
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
