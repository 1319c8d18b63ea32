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

// view-forge: batch generation of query/key composite view pairs.
//
//   view-forge generate --config <path> [--seed N] [--workers N]
//   view-forge stats --manifest <path> --out <csv> [--svg <path>]
//   view-forge validate --config <path>
//
// Exit codes: 0 success, 1 configuration error, 2 I/O error.

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "viewforge/error.hpp"
#include "viewforge/logging.hpp"
#include "viewforge/pipeline/config.hpp"
#include "viewforge/pipeline/engine.hpp"
#include "viewforge/pipeline/manifest.hpp"
#include "viewforge/pipeline/stats.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitIo = 2;

int cmd_generate(const std::string& config_path, std::optional<std::uint64_t> seed,
                 std::optional<int> workers) {
  auto cfg = viewforge::pipeline::validate_config(config_path);
  if (seed) cfg.master_seed = *seed;
  if (workers) cfg.workers = *workers;
  const auto summary = viewforge::pipeline::run_generate(cfg);
  for (const auto& w : summary.warnings) spdlog::warn("{}", w);
  std::cout << "pairs_emitted: " << summary.pairs_emitted << "\n"
            << "warnings: " << summary.warnings.size() << "\n"
            << "wall_time_s: " << summary.wall_time_s << "\n"
            << "manifest: " << (cfg.output_dir / viewforge::pipeline::kManifestName).string() << "\n";
  return kExitOk;
}

int cmd_stats(const std::string& manifest, const std::string& out_csv,
              const std::optional<std::string>& svg) {
  std::optional<std::filesystem::path> svg_path;
  if (svg) svg_path = *svg;
  const auto s = viewforge::pipeline::run_stats(manifest, out_csv, svg_path);
  std::cout << "rows: " << s.rows << "\n"
            << "satisfied_rows: " << s.satisfied_rows << "\n"
            << "iou_mismatches: " << s.iou_mismatches << "\n"
            << "mean_query_area_frac: " << s.mean_query_area_frac << "\n"
            << "mean_key_area_frac: " << s.mean_key_area_frac << "\n";
  if (s.min_satisfied_iou) std::cout << "min_satisfied_iou: " << *s.min_satisfied_iou << "\n";
  return kExitOk;
}

int cmd_validate(const std::string& config_path) {
  std::cout << viewforge::pipeline::to_yaml(viewforge::pipeline::validate_config(config_path));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  viewforge::init_logging();

  CLI::App app{"Deterministic contrastive view-pair synthesis"};
  app.name("view-forge");
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
  auto* gen = app.add_subcommand("generate", "Generate view pairs for a corpus");
  gen->add_option("--config", config_path, "YAML configuration")->required();
  gen->add_option("--seed", seed, "Override master_seed");
  gen->add_option("--workers", workers, "Override worker count")->check(CLI::PositiveNumber);

  std::string manifest, out_csv;
  std::optional<std::string> svg;
  auto* stats = app.add_subcommand("stats", "Per-pair strategy statistics from a manifest");
  stats->add_option("--manifest", manifest, "manifest.jsonl path")->required();
  stats->add_option("--out", out_csv, "CSV output path")->required();
  stats->add_option("--svg", svg, "Optional SVG histogram output");

  std::string validate_path;
  auto* val = app.add_subcommand("validate", "Check a configuration and print it resolved");
  val->add_option("--config", validate_path, "YAML configuration")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*gen) return cmd_generate(config_path, seed, workers);
    if (*stats) return cmd_stats(manifest, out_csv, svg);
    if (*val) return cmd_validate(validate_path);
  } catch (const viewforge::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const viewforge::IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitOk;
}
