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

#include "viewforge/pipeline/stats.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "viewforge/core/box.hpp"
#include "viewforge/error.hpp"
#include "viewforge/pipeline/manifest.hpp"

namespace viewforge::pipeline {
namespace {

struct StatRow {
  std::uint64_t item_index;
  std::string source_path;
  std::string branch;
  std::string saliency_mode;
  bool satisfied;
  double iou;
  double query_area_frac;
  double key_area_frac;
  std::optional<double> query_salient_frac;
  std::optional<double> key_salient_frac;
};

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string num(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::string num(const std::optional<double>& v) { return v ? num(*v) : std::string(); }

void write_histogram(std::ostream& svg, double x, double y, double w, double h,
                     const std::string& title, const std::vector<double>& values) {
  constexpr int kBins = 20;
  std::array<int, kBins> counts{};
  for (double v : values) {
    const int bin = std::clamp(static_cast<int>(std::floor(v * kBins)), 0, kBins - 1);
    ++counts[bin];
  }
  const int peak = std::max(1, *std::ranges::max_element(counts));
  svg << "<g transform=\"translate(" << x << "," << y << ")\">\n";
  svg << "<text x=\"0\" y=\"14\" font-size=\"13\" font-family=\"sans-serif\">" << title << " (n="
      << values.size() << ")</text>\n";
  const double top = 22.0;
  const double plot_h = h - top - 18.0;
  const double bar_w = w / kBins;
  for (int b = 0; b < kBins; ++b) {
    const double bh = plot_h * counts[b] / peak;
    svg << "<rect x=\"" << b * bar_w << "\" y=\"" << top + plot_h - bh << "\" width=\""
        << bar_w - 1 << "\" height=\"" << bh << "\" fill=\"#4a78b5\"/>\n";
  }
  svg << "<line x1=\"0\" y1=\"" << top + plot_h << "\" x2=\"" << w << "\" y2=\"" << top + plot_h
      << "\" stroke=\"black\"/>\n";
  for (double t : {0.0, 0.5, 1.0}) {
    svg << "<text x=\"" << t * w << "\" y=\"" << h - 2 << "\" font-size=\"10\" text-anchor=\"middle\""
        << " font-family=\"sans-serif\">" << t << "</text>\n";
  }
  svg << "</g>\n";
}

void write_branch_bars(std::ostream& svg, double x, double y, double w, double h,
                       const std::map<std::string, int>& counts) {
  svg << "<g transform=\"translate(" << x << "," << y << ")\">\n";
  svg << "<text x=\"0\" y=\"14\" font-size=\"13\" font-family=\"sans-serif\">policy branch</text>\n";
  int peak = 1;
  for (const auto& [_, c] : counts) peak = std::max(peak, c);
  const double top = 22.0;
  const double plot_h = h - top - 18.0;
  const double bar_w = counts.empty() ? w : w / static_cast<double>(counts.size());
  int i = 0;
  for (const auto& [name, c] : counts) {
    const double bh = plot_h * c / peak;
    svg << "<rect x=\"" << i * bar_w << "\" y=\"" << top + plot_h - bh << "\" width=\""
        << bar_w - 4 << "\" height=\"" << bh << "\" fill=\"#b5704a\"/>\n";
    svg << "<text x=\"" << (i + 0.5) * bar_w << "\" y=\"" << h - 2
        << "\" font-size=\"10\" text-anchor=\"middle\" font-family=\"sans-serif\">" << name << " ("
        << c << ")</text>\n";
    ++i;
  }
  svg << "</g>\n";
}

}  // namespace

StatsSummary run_stats(const std::filesystem::path& manifest, const std::filesystem::path& out_csv,
                       const std::optional<std::filesystem::path>& out_svg) {
  const std::vector<ManifestRow> rows = read_manifest(manifest);

  StatsSummary summary;
  std::vector<StatRow> stats;
  stats.reserve(rows.size());
  for (const ManifestRow& r : rows) {
    const PixelBox region = box_from_vec(r.source_region);
    const PixelBox q = box_from_vec(r.query_crop);
    const PixelBox k = box_from_vec(r.key_crop);
    const double recomputed = iou(q, k);
    if (recomputed != r.iou_achieved) ++summary.iou_mismatches;
    stats.push_back({r.item_index, r.source_path, r.branch, r.saliency_mode, r.constraint_satisfied,
                     recomputed, static_cast<double>(q.area()) / static_cast<double>(region.area()),
                     static_cast<double>(k.area()) / static_cast<double>(region.area()),
                     r.query_salient_frac, r.key_salient_frac});
  }

  std::ofstream csv(out_csv, std::ios::trunc);
  if (!csv) throw IoError("cannot write " + out_csv.string());
  csv << "item_index,source_path,branch,saliency_mode,constraint_satisfied,iou_achieved,"
         "query_area_frac,key_area_frac,query_salient_frac,key_salient_frac\n";
  for (const StatRow& s : stats) {
    csv << s.item_index << ',' << csv_field(s.source_path) << ',' << s.branch << ','
        << s.saliency_mode << ',' << (s.satisfied ? "true" : "false") << ',' << num(s.iou) << ','
        << num(s.query_area_frac) << ',' << num(s.key_area_frac) << ','
        << num(s.query_salient_frac) << ',' << num(s.key_salient_frac) << '\n';
  }
  if (!csv) throw IoError("failed while writing " + out_csv.string());

  summary.rows = stats.size();
  double qsum = 0.0, ksum = 0.0;
  for (const StatRow& s : stats) {
    qsum += s.query_area_frac;
    ksum += s.key_area_frac;
    if (s.satisfied) {
      ++summary.satisfied_rows;
      summary.min_satisfied_iou = std::min(summary.min_satisfied_iou.value_or(1.0), s.iou);
    }
  }
  if (!stats.empty()) {
    summary.mean_query_area_frac = qsum / static_cast<double>(stats.size());
    summary.mean_key_area_frac = ksum / static_cast<double>(stats.size());
  }

  if (out_svg) {
    std::vector<double> ious, qa, ka, qs, ks;
    std::map<std::string, int> branches;
    for (const StatRow& s : stats) {
      ious.push_back(s.iou);
      qa.push_back(s.query_area_frac);
      ka.push_back(s.key_area_frac);
      if (s.query_salient_frac) qs.push_back(*s.query_salient_frac);
      if (s.key_salient_frac) ks.push_back(*s.key_salient_frac);
      ++branches[s.branch];
    }
    constexpr double kPanelW = 360, kPanelH = 200;
    std::ofstream svg(*out_svg, std::ios::trunc);
    if (!svg) throw IoError("cannot write " + out_svg->string());
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << 2 * kPanelW + 60
        << "\" height=\"" << 3 * kPanelH + 40 << "\">\n";
    write_histogram(svg, 20, 10, kPanelW, kPanelH, "iou_achieved", ious);
    write_histogram(svg, 40 + kPanelW, 10, kPanelW, kPanelH, "query_area_frac", qa);
    write_histogram(svg, 20, 20 + kPanelH, kPanelW, kPanelH, "key_area_frac", ka);
    write_histogram(svg, 40 + kPanelW, 20 + kPanelH, kPanelW, kPanelH, "query_salient_frac", qs);
    write_histogram(svg, 20, 30 + 2 * kPanelH, kPanelW, kPanelH, "key_salient_frac", ks);
    write_branch_bars(svg, 40 + kPanelW, 30 + 2 * kPanelH, kPanelW, kPanelH, branches);
    svg << "</svg>\n";
    if (!svg) throw IoError("failed while writing " + out_svg->string());
  }
  return summary;
}

}  // namespace viewforge::pipeline
