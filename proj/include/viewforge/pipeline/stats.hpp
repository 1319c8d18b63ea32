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

#include <filesystem>
#include <optional>

namespace viewforge::pipeline {

struct StatsSummary {
  std::size_t rows = 0;
  std::size_t satisfied_rows = 0;
  // Rows whose stored iou_achieved disagrees with the IoU of the stored boxes.
  std::size_t iou_mismatches = 0;
  double mean_query_area_frac = 0.0;
  double mean_key_area_frac = 0.0;
  std::optional<double> min_satisfied_iou;
};

// Per-pair CSV (and optional SVG histograms) recomputed from the manifest's
// stored boxes. Columns:
//   item_index,source_path,branch,saliency_mode,constraint_satisfied,
//   iou_achieved,query_area_frac,key_area_frac,query_salient_frac,key_salient_frac
StatsSummary run_stats(const std::filesystem::path& manifest, const std::filesystem::path& out_csv,
                       const std::optional<std::filesystem::path>& out_svg = std::nullopt);

}  // namespace viewforge::pipeline
