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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <openssl/evp.h>
#include <unistd.h>

#include "viewforge/core/image_io.hpp"
#include "viewforge/core/raster.hpp"
#include "viewforge/core/rng.hpp"

namespace viewforge::testing {

// Diagonal colour stripes plus per-pixel noise; seed selects phase and frequency.
inline RasterImage synthetic_image(int w, int h, std::uint64_t seed) {
  SeededRng rng(seed, 0x5eed);
  const double fx = rng.uniform(0.02, 0.09);
  const double fy = rng.uniform(0.02, 0.09);
  const double phase = rng.uniform(0.0, 6.28);
  RasterImage img(w, h, 3);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double t = std::sin(fx * x + fy * y + phase);
      const double s = std::floor((x + 2 * y) / 24.0);
      for (int c = 0; c < 3; ++c) {
        const double v = 128.0 + 80.0 * std::sin(t * 2.0 + c * 2.1 + s) + rng.uniform(-20.0, 20.0);
        img.at(x, y, c) = clamp_to_byte(v);
      }
    }
  }
  return img;
}

// Bright ellipse on dark background, 8-bit saliency map.
inline RasterImage synthetic_saliency(int w, int h, std::uint64_t seed) {
  SeededRng rng(seed, 0x5a1);
  const double cx = rng.uniform(0.3, 0.7) * w;
  const double cy = rng.uniform(0.3, 0.7) * h;
  const double rx = rng.uniform(0.15, 0.3) * w;
  const double ry = rng.uniform(0.15, 0.3) * h;
  RasterImage map(w, h, 1);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double d = std::pow((x - cx) / rx, 2) + std::pow((y - cy) / ry, 2);
      map.at(x, y) = d <= 1.0 ? 230 : 10;
    }
  }
  return map;
}

inline std::vector<std::uint8_t> read_bytes(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline std::string sha256_hex(const void* data, std::size_t size) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data, size, digest, &len, EVP_sha256(), nullptr);
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return os.str();
}

inline std::string image_hash(const RasterImage& img) {
  return sha256_hex(img.data().data(), img.data().size());
}

// SHA-256 over every regular file in dir, sorted by name, name and bytes.
inline std::string directory_hash(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    if (e.is_regular_file()) files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<std::uint8_t> all;
  for (const auto& f : files) {
    const std::string name = f.filename().string();
    all.insert(all.end(), name.begin(), name.end());
    all.push_back(0);
    const auto bytes = read_bytes(f);
    all.insert(all.end(), bytes.begin(), bytes.end());
  }
  return sha256_hex(all.data(), all.size());
}

class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    SeededRng rng(static_cast<std::uint64_t>(std::hash<std::string>{}(tag)),
                  static_cast<std::uint64_t>(::getpid()));
    path_ = std::filesystem::temp_directory_path() /
            ("viewforge-" + tag + "-" + std::to_string(rng.next_u64() % 1000000007ULL));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const noexcept { return path_; }

 private:
  std::filesystem::path path_;
};

// Writes n synthetic images (with saliency maps when sal_dir is set).
inline void write_corpus(const std::filesystem::path& dir, int n, std::uint64_t seed,
                         const std::filesystem::path* sal_dir = nullptr) {
  std::filesystem::create_directories(dir);
  if (sal_dir) std::filesystem::create_directories(*sal_dir);
  for (int i = 0; i < n; ++i) {
    SeededRng rng(seed, 100 + i);
    const int w = static_cast<int>(rng.uniform_int(200, 400));
    const int h = static_cast<int>(rng.uniform_int(160, 320));
    std::ostringstream stem;
    stem << "img" << std::setw(3) << std::setfill('0') << i;
    write_png(dir / (stem.str() + ".png"), synthetic_image(w, h, seed * 1000 + i));
    if (sal_dir) write_png(*sal_dir / (stem.str() + ".png"), synthetic_saliency(w, h, seed * 1000 + i));
  }
}

}  // namespace viewforge::testing
