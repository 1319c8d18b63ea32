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

#include "viewforge/pipeline/config.hpp"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "viewforge/error.hpp"

namespace viewforge::pipeline {
namespace {

using gdomain::CloneMode;
using gdomain::Preconditioner;

class Reader {
 public:
  explicit Reader(std::string_view origin) : origin_(origin) {}

  void error(const YAML::Node& node, const std::string& key, const std::string& why) {
    std::ostringstream os;
    os << origin_ << ":" << line_of(node) << ": " << key << ": " << why;
    errors_.push_back(os.str());
  }

  // Flags keys of `map` not listed in `allowed`.
  void check_keys(const YAML::Node& map, const std::string& prefix,
                  const std::set<std::string>& allowed) {
    for (const auto& kv : map) {
      const auto key = kv.first.as<std::string>();
      if (!allowed.contains(key)) error(kv.first, prefix + key, "unknown key");
    }
  }

  template <typename T>
  void scalar(const YAML::Node& map, const std::string& prefix, const char* key, T& out,
              const std::function<bool(const T&)>& ok = {}, const char* why = "") {
    const YAML::Node node = map[key];
    if (!node) return;
    const std::string name = prefix + key;
    if (!node.IsScalar()) {
      error(node, name, "expected a scalar value");
      return;
    }
    T value;
    try {
      value = node.as<T>();
    } catch (const YAML::Exception&) {
      error(node, name, "cannot parse '" + node.Scalar() + "'");
      return;
    }
    if (ok && !ok(value)) {
      error(node, name, std::string(why) + " (got " + node.Scalar() + ")");
      return;
    }
    out = value;
  }

  void range(const YAML::Node& map, const std::string& prefix, const char* key, Range& out,
             const std::function<bool(const Range&)>& ok, const char* why) {
    const YAML::Node node = map[key];
    if (!node) return;
    const std::string name = prefix + key;
    if (!node.IsSequence() || node.size() != 2) {
      error(node, name, "expected a two-element list [lo, hi]");
      return;
    }
    Range r{};
    try {
      r = {node[0].as<double>(), node[1].as<double>()};
    } catch (const YAML::Exception&) {
      error(node, name, "bounds must be numbers");
      return;
    }
    if (!ok(r)) {
      error(node, name, why);
      return;
    }
    out = r;
  }

  YAML::Node section(const YAML::Node& root, const char* key) {
    const YAML::Node node = root[key];
    if (node && !node.IsMap()) {
      error(node, key, "expected a mapping");
      return YAML::Node(YAML::NodeType::Map);
    }
    return node ? node : YAML::Node(YAML::NodeType::Map);
  }

  const std::vector<std::string>& errors() const { return errors_; }

 private:
  static int line_of(const YAML::Node& node) {
    const auto mark = node.Mark();
    return mark.line >= 0 ? mark.line + 1 : 0;
  }

  std::string origin_;
  std::vector<std::string> errors_;
};

bool unit_open_closed(const double& v) { return v > 0.0 && v <= 1.0; }
bool probability(const double& v) { return v >= 0.0 && v <= 1.0; }

std::filesystem::path resolve(const std::string& text, const std::filesystem::path& base) {
  std::filesystem::path p(text);
  if (p.is_relative() && !base.empty()) p = base / p;
  return p.lexically_normal();
}

}  // namespace

void PipelineConfig::validate() const {
  if (input_dir.empty()) throw ConfigError("input_dir: required");
  if (output_dir.empty()) throw ConfigError("output_dir: required");
  if (pairs_per_image < 1) throw ConfigError("pairs_per_image: must be at least 1");
  if (workers < 1) throw ConfigError("workers: must be at least 1");
  if ((view.policy.tfns_enabled || view.policy.rand_gray_enabled) && !saliency_dir) {
    throw ConfigError("policy: tfns and rand_gray need saliency_dir");
  }
  if (view.saliency.mode != SaliencyMode::kNone && !saliency_dir) {
    throw ConfigError("saliency.mode: needs saliency_dir");
  }
  view.validate();
}

PipelineConfig parse_config(std::string_view yaml_text, std::string_view origin,
                            const std::filesystem::path& base_dir) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(yaml_text));
  } catch (const YAML::ParserException& e) {
    std::ostringstream os;
    os << origin << ":" << e.mark.line + 1 << ": invalid YAML: " << e.msg;
    throw ConfigError(os.str());
  }
  if (!root || root.IsNull()) root = YAML::Node(YAML::NodeType::Map);
  if (!root.IsMap()) throw ConfigError(std::string(origin) + ":1: top level must be a mapping");

  Reader rd(origin);
  PipelineConfig cfg;
  ViewConfig& v = cfg.view;
  rd.check_keys(root, "", {"input_dir", "saliency_dir", "output_dir", "master_seed",
                           "pairs_per_image", "workers", "crop", "resize", "saliency", "policy",
                           "appearance", "elastic", "flatten", "solver"});

  std::string input, output, saliency;
  rd.scalar<std::string>(root, "", "input_dir", input);
  rd.scalar<std::string>(root, "", "output_dir", output);
  rd.scalar<std::string>(root, "", "saliency_dir", saliency);
  if (input.empty()) rd.error(root, "input_dir", "required");
  if (output.empty()) rd.error(root, "output_dir", "required");
  cfg.input_dir = resolve(input, base_dir);
  cfg.output_dir = resolve(output, base_dir);
  if (!saliency.empty()) cfg.saliency_dir = resolve(saliency, base_dir);

  rd.scalar<std::uint64_t>(root, "", "master_seed", cfg.master_seed);
  rd.scalar<int>(root, "", "pairs_per_image", cfg.pairs_per_image,
                 [](const int& n) { return n >= 1; }, "must be at least 1");
  rd.scalar<int>(root, "", "workers", cfg.workers, [](const int& n) { return n >= 1; },
                 "must be at least 1");

  const YAML::Node crop = rd.section(root, "crop");
  rd.check_keys(crop, "crop.", {"min_area_frac", "max_area_frac", "aspect_range", "iou_threshold",
                                "max_rejection_tries"});
  rd.scalar<double>(crop, "crop.", "min_area_frac", v.crop.min_area_frac, unit_open_closed,
                    "must be in (0, 1]");
  rd.scalar<double>(crop, "crop.", "max_area_frac", v.crop.max_area_frac, unit_open_closed,
                    "must be in (0, 1]");
  if (v.crop.min_area_frac > v.crop.max_area_frac) {
    rd.error(crop["min_area_frac"] ? crop["min_area_frac"] : crop, "crop.min_area_frac",
             "must not exceed crop.max_area_frac");
  }
  rd.range(crop, "crop.", "aspect_range", v.crop.aspect_range,
           [](const Range& r) { return r.lo > 0.0 && r.lo <= r.hi; }, "needs 0 < lo <= hi");
  rd.scalar<double>(crop, "crop.", "iou_threshold", v.crop.iou_threshold,
                    [](const double& t) { return t >= 0.0 && t < 1.0; }, "must be in [0, 1)");
  rd.scalar<int>(crop, "crop.", "max_rejection_tries", v.crop.max_rejection_tries,
                 [](const int& n) { return n >= 1; }, "must be at least 1");

  const YAML::Node resize = rd.section(root, "resize");
  rd.check_keys(resize, "resize.", {"aspect_range", "side_range"});
  rd.range(resize, "resize.", "aspect_range", v.resize.aspect_range,
           [](const Range& r) { return r.lo > 0.0 && r.lo <= r.hi; }, "needs 0 < lo <= hi");
  rd.range(resize, "resize.", "side_range", v.resize.side_range,
           [](const Range& r) {
             return r.lo >= 1.0 && r.lo <= r.hi && r.hi <= kCompositeSize &&
                    r.lo == std::floor(r.lo) && r.hi == std::floor(r.hi);
           },
           "needs whole pixels 1 <= lo <= hi <= 256");

  const YAML::Node sal = rd.section(root, "saliency");
  rd.check_keys(sal, "saliency.", {"mode", "binarize_threshold", "min_component_area",
                                   "overlap_fraction", "box_padding"});
  std::string mode = "none";
  rd.scalar<std::string>(sal, "saliency.", "mode", mode);
  if (auto m = parse_saliency_mode(mode)) {
    v.saliency.mode = *m;
  } else {
    rd.error(sal["mode"], "saliency.mode",
             "must be one of none, overlap_constraint, object_crop, tightened (got " + mode + ")");
  }
  rd.scalar<double>(sal, "saliency.", "binarize_threshold", v.saliency.binarize_threshold,
                    [](const double& t) { return t > 0.0 && t < 1.0; }, "must be in (0, 1)");
  rd.scalar<int>(sal, "saliency.", "min_component_area", v.saliency.min_component_area,
                 [](const int& n) { return n >= 1; }, "must be at least 1");
  rd.scalar<double>(sal, "saliency.", "overlap_fraction", v.saliency.overlap_fraction, probability,
                    "must be in [0, 1]");
  rd.scalar<int>(sal, "saliency.", "box_padding", v.saliency.box_padding,
                 [](const int& n) { return n >= 0; }, "must be non-negative");

  const YAML::Node pol = rd.section(root, "policy");
  rd.check_keys(pol, "policy.", {"poisson_blend", "texture_flatten", "elastic", "baseline", "tfns",
                                 "rand_gray", "clone_mode"});
  const bool any_weight = pol["poisson_blend"] || pol["texture_flatten"] || pol["elastic"] ||
                          pol["baseline"];
  if (any_weight) v.policy.weights = {0.0, 0.0, 0.0, 0.0};
  for (PolicyBranch b : kPolicyBranches) {
    const std::string key(to_string(b));
    rd.scalar<double>(pol, "policy.", key.c_str(), v.policy.weights[static_cast<std::size_t>(b)],
                      [](const double& w) { return w >= 0.0; }, "must be non-negative");
  }
  double sum = 0.0;
  for (double w : v.policy.weights) sum += w;
  if (std::abs(sum - 1.0) > 1e-9) {
    rd.error(pol, "policy", "branch weights must sum to 1 (got " + std::to_string(sum) + ")");
  }
  rd.scalar<bool>(pol, "policy.", "tfns", v.policy.tfns_enabled);
  rd.scalar<bool>(pol, "policy.", "rand_gray", v.policy.rand_gray_enabled);
  if (v.policy.tfns_enabled && v.policy.rand_gray_enabled) {
    rd.error(pol["rand_gray"], "policy.rand_gray", "cannot be combined with policy.tfns");
  }
  if ((v.policy.tfns_enabled || v.policy.rand_gray_enabled) && !cfg.saliency_dir) {
    rd.error(pol, "policy", "tfns and rand_gray need saliency_dir");
  }
  if (v.saliency.mode != SaliencyMode::kNone && !cfg.saliency_dir) {
    rd.error(sal["mode"], "saliency.mode", "needs saliency_dir");
  }
  std::string clone = "import";
  rd.scalar<std::string>(pol, "policy.", "clone_mode", clone);
  if (clone == "import") {
    v.policy.clone_mode = CloneMode::kImportGradients;
  } else if (clone == "mixed") {
    v.policy.clone_mode = CloneMode::kMixedGradients;
  } else {
    rd.error(pol["clone_mode"], "policy.clone_mode", "must be import or mixed (got " + clone + ")");
  }

  const YAML::Node app = rd.section(root, "appearance");
  rd.check_keys(app, "appearance.", {"blur_prob", "blur_sigma_range", "jitter_prob", "brightness",
                                     "contrast", "saturation", "hue", "grayscale_prob", "hflip_prob"});
  rd.scalar<double>(app, "appearance.", "blur_prob", v.appearance.blur_prob, probability,
                    "must be in [0, 1]");
  rd.range(app, "appearance.", "blur_sigma_range", v.appearance.blur_sigma_range,
           [](const Range& r) { return r.lo > 0.0 && r.lo <= r.hi; }, "needs 0 < lo <= hi");
  rd.scalar<double>(app, "appearance.", "jitter_prob", v.appearance.jitter_prob, probability,
                    "must be in [0, 1]");
  rd.scalar<double>(app, "appearance.", "brightness", v.appearance.jitter.brightness, probability,
                    "must be in [0, 1]");
  rd.scalar<double>(app, "appearance.", "contrast", v.appearance.jitter.contrast, probability,
                    "must be in [0, 1]");
  rd.scalar<double>(app, "appearance.", "saturation", v.appearance.jitter.saturation, probability,
                    "must be in [0, 1]");
  rd.scalar<double>(app, "appearance.", "hue", v.appearance.jitter.hue,
                    [](const double& h) { return h >= 0.0 && h <= 0.5; }, "must be in [0, 0.5]");
  rd.scalar<double>(app, "appearance.", "grayscale_prob", v.appearance.grayscale_prob, probability,
                    "must be in [0, 1]");
  rd.scalar<double>(app, "appearance.", "hflip_prob", v.appearance.hflip_prob, probability,
                    "must be in [0, 1]");

  const YAML::Node el = rd.section(root, "elastic");
  rd.check_keys(el, "elastic.", {"alpha", "sigma"});
  rd.scalar<double>(el, "elastic.", "alpha", v.elastic.alpha, [](const double& a) { return a >= 0.0; },
                    "must be non-negative");
  rd.scalar<double>(el, "elastic.", "sigma", v.elastic.sigma, [](const double& s) { return s > 0.0; },
                    "must be positive");

  const YAML::Node fl = rd.section(root, "flatten");
  rd.check_keys(fl, "flatten.", {"edge_low", "edge_high"});
  rd.scalar<double>(fl, "flatten.", "edge_low", v.edges.low, [](const double& t) { return t >= 0.0; },
                    "must be non-negative");
  rd.scalar<double>(fl, "flatten.", "edge_high", v.edges.high,
                    [](const double& t) { return t >= 0.0; }, "must be non-negative");

  const YAML::Node sol = rd.section(root, "solver");
  rd.check_keys(sol, "solver.", {"tolerance", "max_iterations", "preconditioner"});
  rd.scalar<double>(sol, "solver.", "tolerance", v.solver.tolerance,
                    [](const double& t) { return t > 0.0; }, "must be positive");
  rd.scalar<int>(sol, "solver.", "max_iterations", v.solver.max_iterations,
                 [](const int& n) { return n >= 1; }, "must be at least 1");
  std::string pre = "mic0";
  rd.scalar<std::string>(sol, "solver.", "preconditioner", pre);
  if (pre == "mic0") {
    v.solver.preconditioner = Preconditioner::kMic0;
  } else if (pre == "jacobi") {
    v.solver.preconditioner = Preconditioner::kJacobi;
  } else if (pre == "none") {
    v.solver.preconditioner = Preconditioner::kNone;
  } else {
    rd.error(sol["preconditioner"], "solver.preconditioner",
             "must be mic0, jacobi or none (got " + pre + ")");
  }

  if (!rd.errors().empty()) {
    std::string msg = "invalid configuration:";
    for (const auto& e : rd.errors()) msg += "\n  " + e;
    throw ConfigError(msg);
  }
  cfg.validate();
  return cfg;
}

PipelineConfig validate_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.string(), path.parent_path());
}

std::string to_yaml(const PipelineConfig& cfg) {
  const ViewConfig& v = cfg.view;
  YAML::Emitter out;
  auto range = [&](const Range& r) {
    out << YAML::Flow << YAML::BeginSeq << r.lo << r.hi << YAML::EndSeq;
  };
  out << YAML::BeginMap;
  out << YAML::Key << "input_dir" << YAML::Value << cfg.input_dir.string();
  if (cfg.saliency_dir) out << YAML::Key << "saliency_dir" << YAML::Value << cfg.saliency_dir->string();
  out << YAML::Key << "output_dir" << YAML::Value << cfg.output_dir.string();
  out << YAML::Key << "master_seed" << YAML::Value << cfg.master_seed;
  out << YAML::Key << "pairs_per_image" << YAML::Value << cfg.pairs_per_image;
  out << YAML::Key << "workers" << YAML::Value << cfg.workers;

  out << YAML::Key << "crop" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "min_area_frac" << YAML::Value << v.crop.min_area_frac;
  out << YAML::Key << "max_area_frac" << YAML::Value << v.crop.max_area_frac;
  out << YAML::Key << "aspect_range" << YAML::Value;
  range(v.crop.aspect_range);
  out << YAML::Key << "iou_threshold" << YAML::Value << v.crop.iou_threshold;
  out << YAML::Key << "max_rejection_tries" << YAML::Value << v.crop.max_rejection_tries;
  out << YAML::EndMap;

  out << YAML::Key << "resize" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "aspect_range" << YAML::Value;
  range(v.resize.aspect_range);
  out << YAML::Key << "side_range" << YAML::Value;
  range(v.resize.side_range);
  out << YAML::EndMap;

  out << YAML::Key << "saliency" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "mode" << YAML::Value << std::string(to_string(v.saliency.mode));
  out << YAML::Key << "binarize_threshold" << YAML::Value << v.saliency.binarize_threshold;
  out << YAML::Key << "min_component_area" << YAML::Value << v.saliency.min_component_area;
  out << YAML::Key << "overlap_fraction" << YAML::Value << v.saliency.overlap_fraction;
  out << YAML::Key << "box_padding" << YAML::Value << v.saliency.box_padding;
  out << YAML::EndMap;

  out << YAML::Key << "policy" << YAML::Value << YAML::BeginMap;
  for (PolicyBranch b : kPolicyBranches) {
    out << YAML::Key << std::string(to_string(b)) << YAML::Value << v.policy.weight(b);
  }
  out << YAML::Key << "tfns" << YAML::Value << v.policy.tfns_enabled;
  out << YAML::Key << "rand_gray" << YAML::Value << v.policy.rand_gray_enabled;
  out << YAML::Key << "clone_mode" << YAML::Value
      << (v.policy.clone_mode == CloneMode::kMixedGradients ? "mixed" : "import");
  out << YAML::EndMap;

  out << YAML::Key << "appearance" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "blur_prob" << YAML::Value << v.appearance.blur_prob;
  out << YAML::Key << "blur_sigma_range" << YAML::Value;
  range(v.appearance.blur_sigma_range);
  out << YAML::Key << "jitter_prob" << YAML::Value << v.appearance.jitter_prob;
  out << YAML::Key << "brightness" << YAML::Value << v.appearance.jitter.brightness;
  out << YAML::Key << "contrast" << YAML::Value << v.appearance.jitter.contrast;
  out << YAML::Key << "saturation" << YAML::Value << v.appearance.jitter.saturation;
  out << YAML::Key << "hue" << YAML::Value << v.appearance.jitter.hue;
  out << YAML::Key << "grayscale_prob" << YAML::Value << v.appearance.grayscale_prob;
  out << YAML::Key << "hflip_prob" << YAML::Value << v.appearance.hflip_prob;
  out << YAML::EndMap;

  out << YAML::Key << "elastic" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "alpha" << YAML::Value << v.elastic.alpha;
  out << YAML::Key << "sigma" << YAML::Value << v.elastic.sigma;
  out << YAML::EndMap;

  out << YAML::Key << "flatten" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "edge_low" << YAML::Value << v.edges.low;
  out << YAML::Key << "edge_high" << YAML::Value << v.edges.high;
  out << YAML::EndMap;

  const char* pre = v.solver.preconditioner == Preconditioner::kMic0     ? "mic0"
                    : v.solver.preconditioner == Preconditioner::kJacobi ? "jacobi"
                                                                         : "none";
  out << YAML::Key << "solver" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "tolerance" << YAML::Value << v.solver.tolerance;
  out << YAML::Key << "max_iterations" << YAML::Value << v.solver.max_iterations;
  out << YAML::Key << "preconditioner" << YAML::Value << pre;
  out << YAML::EndMap;

  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

}  // namespace viewforge::pipeline
