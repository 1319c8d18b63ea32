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
#include <span>
#include <vector>

#include "viewforge/core/raster.hpp"

namespace viewforge {

enum class ColorMode { kKeep, kGray, kRgb };

// Decodes PNG or JPEG (sniffed from the file signature). Alpha is discarded,
// 16-bit samples are reduced to 8 bits. Throws IoError.
RasterImage read_image(const std::filesystem::path& path, ColorMode mode = ColorMode::kKeep);
RasterImage decode_image(std::span<const std::uint8_t> bytes, ColorMode mode = ColorMode::kKeep);

// Lossless PNG at a fixed compression level, so equal images give equal bytes.
std::vector<std::uint8_t> encode_png(const RasterImage& img);
void write_png(const std::filesystem::path& path, const RasterImage& img);

// Baseline JPEG; used for fixtures.
std::vector<std::uint8_t> encode_jpeg(const RasterImage& img, int quality = 90);

bool is_supported_image(const std::filesystem::path& path);

}  // namespace viewforge
