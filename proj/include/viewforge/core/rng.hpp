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

#include <array>
#include <cstdint>

namespace viewforge {

// Counter-based generator (Philox4x32-10). The draw sequence is a pure
// function of (master_seed, stream_id), so streams can be created in any
// order on any thread without sharing state.
class SeededRng {
 public:
  SeededRng(std::uint64_t master_seed, std::uint64_t stream_id) noexcept
      : master_seed_(master_seed), stream_id_(stream_id) {}

  std::uint64_t master_seed() const noexcept { return master_seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

  std::uint64_t next_u64() noexcept;

  // [0, 1) with 53 bits of resolution.
  double uniform() noexcept;
  // [lo, hi)
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
  // Strictly inside (-1, 1).
  double symmetric_open() noexcept;
  // Integer in [lo, hi], unbiased.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) noexcept;
  // exp(U[log lo, log hi]); returns lo when lo == hi.
  double log_uniform(double lo, double hi) noexcept;
  bool bernoulli(double p) noexcept { return p >= 1.0 || (p > 0.0 && uniform() < p); }

 private:
  std::uint64_t master_seed_;
  std::uint64_t stream_id_;
  std::uint64_t counter_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
  int buffered_ = 0;
};

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key) noexcept;

std::uint64_t splitmix64(std::uint64_t x) noexcept;

// Stream for one pipeline stage of one item.
SeededRng derive_stream(std::uint64_t master_seed, std::uint64_t item_index,
                        std::uint64_t stage_tag) noexcept;

// Stage tags used by the view pipeline. Values are part of the determinism
// contract; never renumber.
namespace stage {
inline constexpr std::uint64_t kItemSeed = 1;
inline constexpr std::uint64_t kSourceCrop = 2;
inline constexpr std::uint64_t kCropPair = 3;
inline constexpr std::uint64_t kPolicy = 4;
inline constexpr std::uint64_t kQueryTarget = 5;
inline constexpr std::uint64_t kKeyTarget = 6;
inline constexpr std::uint64_t kQueryPlacement = 7;
inline constexpr std::uint64_t kKeyPlacement = 8;
inline constexpr std::uint64_t kQueryShortcut = 9;
inline constexpr std::uint64_t kQueryAppearance = 10;
inline constexpr std::uint64_t kKeyAppearance = 11;
inline constexpr std::uint64_t kBackgrounds = 12;
}  // namespace stage

}  // namespace viewforge
