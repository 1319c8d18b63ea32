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

#include "viewforge/pipeline/manifest.hpp"

#include <fstream>

#include "viewforge/error.hpp"

namespace viewforge::pipeline {

std::vector<int> box_to_vec(const PixelBox& b) { return {b.x0(), b.y0(), b.x1(), b.y1()}; }

PixelBox box_from_vec(const std::vector<int>& v) {
  if (v.size() != 4) throw IoError("manifest box must have four coordinates");
  return {v[0], v[1], v[2], v[3]};
}

ManifestRow make_row(const ViewPairRecord& rec, const std::string& query_png, const std::string& key_png) {
  const ViewPlan& p = rec.plan;
  ManifestRow r;
  r.item_index = rec.item_index;
  r.source_path = rec.source_path;
  r.item_seed = rec.item_seed;
  r.query_png = query_png;
  r.key_png = key_png;
  r.source_size = {p.source_width, p.source_height};
  r.source_region = box_to_vec(p.source_region);
  r.query_crop = box_to_vec(p.query_crop);
  r.key_crop = box_to_vec(p.key_crop);
  r.query_box = box_to_vec(rec.query_box);
  r.key_box = box_to_vec(rec.key_box);
  r.iou_achieved = rec.iou_achieved;
  r.constraint_satisfied = rec.constraint_satisfied;
  r.pair_tries = p.pair_tries;
  r.saliency_mode = std::string(to_string(p.saliency_mode));
  r.branch = std::string(to_string(p.branch));
  r.strategy_used = rec.strategy_used;
  r.query_salient_frac = p.query_salient_frac;
  r.key_salient_frac = p.key_salient_frac;
  r.warnings = rec.warnings;
  return r;
}

void to_json(nlohmann::json& j, const ManifestRow& r) {
  auto opt = [](const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); };
  // nlohmann::json orders keys alphabetically, which keeps lines stable.
  j = nlohmann::json{{"item_index", r.item_index},
                     {"source_path", r.source_path},
                     {"item_seed", r.item_seed},
                     {"query_png", r.query_png},
                     {"key_png", r.key_png},
                     {"source_size", r.source_size},
                     {"source_region", r.source_region},
                     {"query_crop", r.query_crop},
                     {"key_crop", r.key_crop},
                     {"query_box", r.query_box},
                     {"key_box", r.key_box},
                     {"iou_achieved", r.iou_achieved},
                     {"constraint_satisfied", r.constraint_satisfied},
                     {"pair_tries", r.pair_tries},
                     {"saliency_mode", r.saliency_mode},
                     {"branch", r.branch},
                     {"strategy_used", r.strategy_used},
                     {"query_salient_frac", opt(r.query_salient_frac)},
                     {"key_salient_frac", opt(r.key_salient_frac)},
                     {"warnings", r.warnings}};
}

void from_json(const nlohmann::json& j, ManifestRow& r) {
  auto opt = [&](const char* key) -> std::optional<double> {
    const auto& v = j.at(key);
    if (v.is_null()) return std::nullopt;
    return v.get<double>();
  };
  j.at("item_index").get_to(r.item_index);
  j.at("source_path").get_to(r.source_path);
  j.at("item_seed").get_to(r.item_seed);
  j.at("query_png").get_to(r.query_png);
  j.at("key_png").get_to(r.key_png);
  j.at("source_size").get_to(r.source_size);
  j.at("source_region").get_to(r.source_region);
  j.at("query_crop").get_to(r.query_crop);
  j.at("key_crop").get_to(r.key_crop);
  j.at("query_box").get_to(r.query_box);
  j.at("key_box").get_to(r.key_box);
  j.at("iou_achieved").get_to(r.iou_achieved);
  j.at("constraint_satisfied").get_to(r.constraint_satisfied);
  j.at("pair_tries").get_to(r.pair_tries);
  j.at("saliency_mode").get_to(r.saliency_mode);
  j.at("branch").get_to(r.branch);
  j.at("strategy_used").get_to(r.strategy_used);
  r.query_salient_frac = opt("query_salient_frac");
  r.key_salient_frac = opt("key_salient_frac");
  j.at("warnings").get_to(r.warnings);
}

std::string serialize_row(const ManifestRow& r) { return nlohmann::json(r).dump(); }

std::vector<ManifestRow> read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read manifest " + path.string());
  std::vector<ManifestRow> rows;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      rows.push_back(nlohmann::json::parse(line).get<ManifestRow>());
    } catch (const nlohmann::json::exception& e) {
      throw IoError(path.string() + ":" + std::to_string(lineno) + ": bad manifest row: " + e.what());
    }
  }
  return rows;
}

}  // namespace viewforge::pipeline
