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
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "viewforge/compositor.hpp"
#include "viewforge/pipeline/config.hpp"

namespace viewforge::pipeline {

// Input images in lexicographic path order plus their normalized
// backgrounds. Item i uses image i / pairs_per_image, so item indices (and
// the RNG streams derived from them) only depend on the sorted listing.
class Corpus {
 public:
  // Scans and decodes the corpus using up to `workers` threads. Throws
  // IoError if input_dir is unreadable, ConfigError if it has no images.
  Corpus(const PipelineConfig& cfg, int workers);

  const PipelineConfig& config() const noexcept { return cfg_; }
  std::size_t image_count() const noexcept { return paths_.size(); }
  std::size_t item_count() const noexcept { return paths_.size() * pairs_per_image_; }
  const std::filesystem::path& path(std::size_t image) const { return paths_[image]; }
  std::string relative_path(std::size_t image) const;
  std::string stem(std::size_t image) const { return paths_[image].stem().string(); }
  const std::vector<std::string>& load_warnings() const noexcept { return load_warnings_; }

  struct ItemFailure {
    std::string message;
  };
  using ItemResult = std::variant<ViewPairRecord, ItemFailure>;

  // Pure function of (config, corpus, item index); safe to call concurrently.
  ItemResult render_item(std::uint64_t item_index) const;

 private:
  PipelineConfig cfg_;
  std::size_t pairs_per_image_;
  std::vector<std::filesystem::path> paths_;
  std::vector<std::optional<RasterImage>> backgrounds_;  // nullopt if undecodable
  std::vector<std::size_t> usable_;                      // images that decoded
  std::vector<std::string> load_warnings_;
};

std::uint64_t item_seed_for(std::uint64_t master_seed, std::uint64_t item_index);

std::string png_name(const std::string& stem, std::uint64_t item_index, char view);

struct GenerateSummary {
  std::size_t pairs_emitted = 0;
  std::vector<std::string> warnings;
  double wall_time_s = 0.0;
};

// Writes <stem>__<item>__q.png / __k.png and manifest.jsonl into output_dir.
// Output bytes depend only on (cfg, corpus), not on cfg.workers. Rows are
// appended in item order and flushed as they complete.
GenerateSummary run_generate(const PipelineConfig& cfg);

// In-process generator: yields exactly the records run_generate would write,
// in manifest order. Not thread-safe; use one session per consumer.
class Session {
 public:
  static Session open(std::string_view config_text, std::uint64_t master_seed,
                      const std::filesystem::path& base_dir = {});

  // nullopt at end of corpus.
  std::optional<ViewPairRecord> next_pair();
  const PipelineConfig& config() const noexcept { return corpus_->config(); }

 private:
  explicit Session(std::unique_ptr<Corpus> corpus) : corpus_(std::move(corpus)) {}

  std::unique_ptr<Corpus> corpus_;
  std::uint64_t next_item_ = 0;
};

}  // namespace viewforge::pipeline
