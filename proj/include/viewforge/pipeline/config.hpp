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
#include <string_view>

#include "viewforge/compositor.hpp"

namespace viewforge::pipeline {

struct PipelineConfig {
  std::filesystem::path input_dir;
  std::optional<std::filesystem::path> saliency_dir;
  std::filesystem::path output_dir;
  std::uint64_t master_seed = 0;
  int pairs_per_image = 1;
  int workers = 1;
  ViewConfig view;

  // Re-checks every numeric invariant; throws ConfigError.
  void validate() const;
};

// Parses a YAML document, fills defaults (the plain copy-paste baseline:
// m = 0.20, M = 1.0, t = 0, 100% baseline policy) and rejects unknown keys
// and invariant violations. The ConfigError message lists every violation as
// "<origin>:<line>: <key>: <reason>". Relative paths resolve against base_dir.
PipelineConfig parse_config(std::string_view yaml_text, std::string_view origin = "<config>",
                            const std::filesystem::path& base_dir = {});

// Reads and parses a config file; relative paths resolve against the file's
// directory. Throws IoError when the file cannot be read.
PipelineConfig validate_config(const std::filesystem::path& path);

// Fully resolved configuration as YAML.
std::string to_yaml(const PipelineConfig& cfg);

}  // namespace viewforge::pipeline
