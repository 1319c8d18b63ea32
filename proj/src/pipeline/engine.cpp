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

#include "viewforge/pipeline/engine.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <chrono>
#include <fstream>

#include "viewforge/core/image_io.hpp"
#include "viewforge/error.hpp"
#include "viewforge/pipeline/manifest.hpp"

namespace fs = std::filesystem;

namespace viewforge::pipeline {

std::uint64_t item_seed_for(std::uint64_t master_seed, std::uint64_t item_index) {
  return derive_stream(master_seed, item_index, stage::kItemSeed).next_u64();
}

std::string png_name(const std::string& stem, std::uint64_t item_index, char view) {
  return stem + "__" + std::to_string(item_index) + "__" + view + ".png";
}

Corpus::Corpus(const PipelineConfig& cfg, int workers)
    : cfg_(cfg), pairs_per_image_(static_cast<std::size_t>(cfg.pairs_per_image)) {
  std::error_code ec;
  if (!fs::is_directory(cfg.input_dir, ec)) {
    throw IoError("input_dir is not a readable directory: " + cfg.input_dir.string());
  }
  try {
    for (const auto& entry : fs::directory_iterator(cfg.input_dir)) {
      if (entry.is_regular_file() && is_supported_image(entry.path())) paths_.push_back(entry.path());
    }
  } catch (const fs::filesystem_error& e) {
    throw IoError(std::string("cannot scan input_dir: ") + e.what());
  }
  if (paths_.empty()) throw ConfigError("input_dir: contains no PNG or JPEG images");
  std::ranges::sort(paths_, [](const fs::path& a, const fs::path& b) {
    return a.filename().generic_string() < b.filename().generic_string();
  });

  backgrounds_.resize(paths_.size());
  std::vector<std::string> errors(paths_.size());
  const auto n = static_cast<std::int64_t>(paths_.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      backgrounds_[i] = normalize_background(read_image(paths_[i], ColorMode::kRgb));
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  }
  for (std::size_t i = 0; i < paths_.size(); ++i) {
    if (backgrounds_[i]) {
      usable_.push_back(i);
    } else {
      load_warnings_.push_back("skipping undecodable image " + relative_path(i) + ": " + errors[i]);
      spdlog::warn("{}", load_warnings_.back());
    }
  }
  if (usable_.empty()) throw IoError("no decodable images in " + cfg.input_dir.string());
}

std::string Corpus::relative_path(std::size_t image) const {
  return paths_[image].filename().generic_string();
}

Corpus::ItemResult Corpus::render_item(std::uint64_t item_index) const {
  const std::size_t image = static_cast<std::size_t>(item_index / pairs_per_image_);
  if (image >= paths_.size()) return ItemFailure{"item index out of range"};
  if (!backgrounds_[image]) return ItemFailure{"source image could not be decoded"};

  const auto pos = static_cast<std::size_t>(
      std::ranges::lower_bound(usable_, image) - usable_.begin());
  SeededRng bg_rng = derive_stream(cfg_.master_seed, item_index, stage::kBackgrounds);
  const auto [a, b] = choose_backgrounds(usable_.size(), pos, bg_rng);
  const RasterImage& bg_q = *backgrounds_[usable_[a]];
  const RasterImage& bg_k = *backgrounds_[usable_[b]];

  RasterImage src;
  try {
    src = read_image(paths_[image], ColorMode::kRgb);
  } catch (const IoError& e) {
    return ItemFailure{e.what()};
  }

  std::vector<std::string> warnings;
  std::optional<SaliencyMap> saliency;
  if (cfg_.saliency_dir) {
    const fs::path map_path = *cfg_.saliency_dir / (paths_[image].stem().string() + ".png");
    std::error_code ec;
    if (fs::exists(map_path, ec)) {
      try {
        saliency = SaliencyMap::load(map_path);
      } catch (const Error& e) {
        warnings.push_back(std::string("saliency map unreadable: ") + e.what());
      }
    }
  }
  if (usable_.size() < 3) {
    warnings.emplace_back("corpus too small for two distinct backgrounds other than the source");
  }

  const std::uint64_t seed = item_seed_for(cfg_.master_seed, item_index);
  ViewPairRecord rec;
  try {
    rec = make_view_pair(src, saliency ? &*saliency : nullptr, cfg_.view, {&bg_q, &bg_k}, seed);
  } catch (const Error& e) {
    return ItemFailure{e.what()};
  }
  rec.item_index = item_index;
  rec.source_path = relative_path(image);
  rec.warnings.insert(rec.warnings.begin(), warnings.begin(), warnings.end());
  return rec;
}

GenerateSummary run_generate(const PipelineConfig& cfg) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  const Corpus corpus(cfg, cfg.workers);

  std::error_code ec;
  fs::create_directories(cfg.output_dir, ec);
  if (ec) throw IoError("cannot create output_dir " + cfg.output_dir.string() + ": " + ec.message());
  const fs::path manifest_path = cfg.output_dir / kManifestName;
  std::ofstream manifest(manifest_path, std::ios::trunc);
  if (!manifest) throw IoError("cannot write " + manifest_path.string());

  GenerateSummary summary;
  summary.warnings = corpus.load_warnings();
  std::optional<std::string> fatal;
  const auto n = static_cast<std::int64_t>(corpus.item_count());
  spdlog::info("generating {} pairs from {} images with {} workers", n, corpus.image_count(),
               cfg.workers);

#pragma omp parallel for ordered schedule(dynamic, 1) num_threads(cfg.workers)
  for (std::int64_t i = 0; i < n; ++i) {
    std::optional<ManifestRow> row;
    std::string failure;
    std::string io_failure;
    try {
      auto result = corpus.render_item(static_cast<std::uint64_t>(i));
      if (auto* rec = std::get_if<ViewPairRecord>(&result)) {
        const std::string stem = fs::path(rec->source_path).stem().string();
        const std::string q = png_name(stem, rec->item_index, 'q');
        const std::string k = png_name(stem, rec->item_index, 'k');
        try {
          write_png(cfg.output_dir / q, rec->query_img);
          write_png(cfg.output_dir / k, rec->key_img);
          row = make_row(*rec, q, k);
        } catch (const IoError& e) {
          io_failure = e.what();
        }
      } else {
        failure = std::get<Corpus::ItemFailure>(result).message;
      }
    } catch (const std::exception& e) {
      failure = e.what();
    }

#pragma omp ordered
    {
      if (row) {
        manifest << serialize_row(*row) << '\n';
        manifest.flush();
        ++summary.pairs_emitted;
        for (const auto& w : row->warnings) summary.warnings.push_back("item " + std::to_string(i) + ": " + w);
      } else if (!io_failure.empty()) {
        if (!fatal) fatal = io_failure;
      } else {
        summary.warnings.push_back("item " + std::to_string(i) + " skipped: " + failure);
        spdlog::warn("{}", summary.warnings.back());
      }
    }
  }

  if (!manifest) throw IoError("failed while writing " + manifest_path.string());
  if (fatal) throw IoError(*fatal);
  summary.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return summary;
}

Session Session::open(std::string_view config_text, std::uint64_t master_seed,
                      const fs::path& base_dir) {
  PipelineConfig cfg = parse_config(config_text, "<session>", base_dir);
  cfg.master_seed = master_seed;
  return Session(std::make_unique<Corpus>(cfg, cfg.workers));
}

std::optional<ViewPairRecord> Session::next_pair() {
  while (next_item_ < corpus_->item_count()) {
    auto result = corpus_->render_item(next_item_++);
    if (auto* rec = std::get_if<ViewPairRecord>(&result)) return std::move(*rec);
  }
  return std::nullopt;
}

}  // namespace viewforge::pipeline
