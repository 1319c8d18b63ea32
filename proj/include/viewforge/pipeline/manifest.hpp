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
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "viewforge/compositor.hpp"

namespace viewforge::pipeline {

// One manifest line per emitted pair. PNG names are relative to the
// manifest's directory.
struct ManifestRow {
  std::uint64_t item_index = 0;
  std::string source_path;  // relative to the input directory
  std::uint64_t item_seed = 0;
  std::string query_png;
  std::string key_png;
  std::vector<int> source_size;    // [w, h]
  std::vector<int> source_region;  // [x0, y0, x1, y1], source coordinates
  std::vector<int> query_crop;
  std::vector<int> key_crop;
  std::vector<int> query_box;  // RoI inside the 256x256 query composite
  std::vector<int> key_box;
  double iou_achieved = 0.0;
  bool constraint_satisfied = true;
  int pair_tries = 0;
  std::string saliency_mode;
  std::string branch;
  std::vector<std::string> strategy_used;
  std::optional<double> query_salient_frac;
  std::optional<double> key_salient_frac;
  std::vector<std::string> warnings;
};

std::vector<int> box_to_vec(const PixelBox& b);
PixelBox box_from_vec(const std::vector<int>& v);

ManifestRow make_row(const ViewPairRecord& rec, const std::string& query_png, const std::string& key_png);

void to_json(nlohmann::json& j, const ManifestRow& r);
void from_json(const nlohmann::json& j, ManifestRow& r);

// Single line, no trailing newline.
std::string serialize_row(const ManifestRow& r);

// Throws IoError on unreadable files and on malformed lines.
std::vector<ManifestRow> read_manifest(const std::filesystem::path& path);

inline constexpr const char* kManifestName = "manifest.jsonl";

}  // namespace viewforge::pipeline
