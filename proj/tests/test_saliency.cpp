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

#include <gtest/gtest.h>

#include <algorithm>
#include <tuple>

#include "support/oracles.hpp"
#include "viewforge/core/rng.hpp"
#include "viewforge/error.hpp"
#include "viewforge/saliency.hpp"

namespace viewforge {
namespace {

BinaryMask filled(int w, int h, std::initializer_list<PixelBox> boxes) {
  BinaryMask m(w, h);
  for (const auto& b : boxes)
    for (int y = b.y0(); y < b.y1(); ++y)
      for (int x = b.x0(); x < b.x1(); ++x) m.set(x, y);
  return m;
}

using testing::random_mask;

TEST(Binarize, ZeroMap) {
  const SaliencyMap map(8, 8, std::vector<double>(64, 0.0));
  EXPECT_FALSE(binarize(map, 0.5).any());
}

TEST(Binarize, BlockAndThresholdEquality) {
  std::vector<double> s(20 * 20, 0.2);
  for (int y = 5; y < 10; ++y)
    for (int x = 3; x < 8; ++x) s[y * 20 + x] = 1.0;
  s[0] = 0.5;
  const BinaryMask m = binarize(SaliencyMap(20, 20, s), 0.5);
  EXPECT_EQ(m.count(), 26u);
  EXPECT_TRUE(m.get(0, 0));
  for (int y = 5; y < 10; ++y)
    for (int x = 3; x < 8; ++x) EXPECT_TRUE(m.get(x, y));
}

TEST(SaliencyMap, FromGrayScales) {
  RasterImage g(2, 1, 1);
  g.at(0, 0) = 255;
  g.at(1, 0) = 51;
  const SaliencyMap map = SaliencyMap::from_gray(g);
  EXPECT_DOUBLE_EQ(map.at(0, 0), 1.0);
  EXPECT_DOUBLE_EQ(map.at(1, 0), 0.2);
  EXPECT_THROW(SaliencyMap::from_gray(RasterImage(2, 2, 3)), GeometryError);
}

TEST(SaliencyStrategy, Validation) {
  SaliencyStrategy s;
  EXPECT_NO_THROW(s.validate());
  s.binarize_threshold = 1.0;
  EXPECT_THROW(s.validate(), ConfigError);
  s = {};
  s.overlap_fraction = 1.5;
  EXPECT_THROW(s.validate(), ConfigError);
  EXPECT_EQ(parse_saliency_mode("tightened"), SaliencyMode::kTightened);
  EXPECT_EQ(parse_saliency_mode("overlap_constraint"), SaliencyMode::kOverlapConstraint);
  EXPECT_FALSE(parse_saliency_mode("bogus").has_value());
  for (auto m : {SaliencyMode::kNone, SaliencyMode::kObjectCrop, SaliencyMode::kTightened,
                 SaliencyMode::kOverlapConstraint})
    EXPECT_EQ(parse_saliency_mode(to_string(m)), m);
}

TEST(ObjectBoxes, TwoRectangles) {
  const BinaryMask m = filled(50, 50, {PixelBox(30, 30, 40, 40), PixelBox(10, 10, 15, 15)});
  const auto boxes = extract_object_boxes(m, 1);
  ASSERT_EQ(boxes.size(), 2u);
  EXPECT_EQ(boxes[0], PixelBox(30, 30, 40, 40));
  EXPECT_EQ(boxes[1], PixelBox(10, 10, 15, 15));
}

TEST(ObjectBoxes, EmptyMask) { EXPECT_TRUE(extract_object_boxes(BinaryMask(30, 30), 1).empty()); }

TEST(ObjectBoxes, UShape) {
  const BinaryMask m = filled(40, 40, {PixelBox(5, 5, 8, 30), PixelBox(20, 5, 23, 30), PixelBox(5, 27, 23, 30)});
  const auto boxes = extract_object_boxes(m, 1);
  ASSERT_EQ(boxes.size(), 1u);
  EXPECT_EQ(boxes[0], PixelBox(5, 5, 23, 30));
  const auto oracle = testing::flood_fill_components(m);
  ASSERT_EQ(oracle.size(), 1u);
  EXPECT_EQ(boxes[0], PixelBox(oracle[0].x0, oracle[0].y0, oracle[0].x1, oracle[0].y1));
}

TEST(ObjectBoxes, DiagonalTouchIsTwoComponents) {
  BinaryMask m(4, 4);
  m.set(1, 1);
  m.set(2, 2);
  EXPECT_EQ(extract_object_boxes(m, 1).size(), 2u);
}

TEST(ObjectBoxes, MinAreaFilter) {
  const BinaryMask m = filled(50, 50, {PixelBox(0, 0, 3, 3), PixelBox(20, 20, 30, 30)});
  const auto boxes = extract_object_boxes(m, 10);
  ASSERT_EQ(boxes.size(), 1u);
  EXPECT_EQ(boxes[0], PixelBox(20, 20, 30, 30));
}

TEST(ObjectBoxes, MatchesFloodFillOracle) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const BinaryMask m = random_mask(seed);
    const int min_area = static_cast<int>(seed % 4 == 0 ? 1 : seed % 4 == 1 ? 3 : seed % 4 == 2 ? 12 : 64);
    const auto comps = extract_object_components(m, min_area);
    std::vector<std::tuple<int, int, int, int, std::size_t>> got;
    for (const auto& c : comps) got.emplace_back(c.box.x0(), c.box.y0(), c.box.x1(), c.box.y1(), c.pixel_count);
    for (std::size_t i = 1; i < comps.size(); ++i) ASSERT_GE(comps[i - 1].pixel_count, comps[i].pixel_count);
    std::sort(got.begin(), got.end());
    ASSERT_EQ(got, testing::flood_fill_box_set(m, min_area)) << "seed " << seed;
  }
}

TEST(TightenedCrop, SingleBox) {
  SeededRng rng(1, 1);
  const std::vector<PixelBox> one{PixelBox(10, 20, 30, 40)};
  EXPECT_EQ(tightened_source_crop(100, 100, one, 0, rng), one[0]);
  EXPECT_EQ(tightened_source_crop(100, 100, one, 1000, rng), PixelBox(0, 0, 100, 100));
  EXPECT_THROW(tightened_source_crop(100, 100, {}, 0, rng), NoSalientObject);
}

TEST(TightenedCrop, UniformSelection) {
  SeededRng rng(2, 1);
  const std::vector<PixelBox> two{PixelBox(0, 0, 10, 10), PixelBox(50, 50, 60, 60)};
  int first = 0;
  for (int i = 0; i < 10000; ++i) first += tightened_source_crop(100, 100, two, 0, rng) == two[0];
  EXPECT_NEAR(first / 10000.0, 0.5, 0.02);
}

TEST(TightenedCrop, ContainsComponentPixels) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const BinaryMask m = random_mask(seed);
    const auto boxes = extract_object_boxes(m, 5);
    if (boxes.empty()) continue;
    SeededRng rng(seed, 3);
    const auto pad = static_cast<int>(seed % 5);
    const PixelBox crop = tightened_source_crop(64, 64, boxes, pad, rng);
    const bool contains_one = std::any_of(boxes.begin(), boxes.end(), [&](const PixelBox& b) { return crop.contains(b); });
    EXPECT_TRUE(contains_one);
  }
}

TEST(MaskIntegral, CountsMatchDirect) {
  const BinaryMask m = random_mask(5);
  const MaskIntegral integral(m);
  EXPECT_EQ(integral.total(), static_cast<std::int64_t>(m.count()));
  SeededRng rng(5, 5);
  for (int i = 0; i < 500; ++i) {
    const int x0 = static_cast<int>(rng.uniform_int(0, 63));
    const int y0 = static_cast<int>(rng.uniform_int(0, 63));
    const PixelBox b(x0, y0, static_cast<int>(rng.uniform_int(x0 + 1, 64)), static_cast<int>(rng.uniform_int(y0 + 1, 64)));
    std::int64_t direct = 0;
    for (int y = b.y0(); y < b.y1(); ++y)
      for (int x = b.x0(); x < b.x1(); ++x) direct += m.get(x, y);
    ASSERT_EQ(integral.count(b), direct);
  }
}

TEST(OverlapCrop, ZeroRhoTakesFirstDraw) {
  BinaryMask m(100, 100);
  m.set(3, 3);
  const CropParams p;
  SeededRng rng(9, 9);
  SeededRng replay = rng;
  const OverlapCrop c = sample_overlap_crop(m, p, 0.0, rng);
  EXPECT_TRUE(c.satisfied);
  EXPECT_EQ(c.box, sample_area_crop(100, 100, p, replay));
}

TEST(OverlapCrop, SinglePixelFullCoverage) {
  BinaryMask m(101, 101);
  m.set(50, 50);
  const CropParams p;
  SeededRng rng(4, 4);
  for (int i = 0; i < 1000; ++i) {
    const OverlapCrop c = sample_overlap_crop(m, p, 1.0, rng);
    if (c.satisfied) ASSERT_TRUE(c.box.contains(50, 50));
  }
}

TEST(OverlapCrop, HalfOfBlock) {
  const BinaryMask m = filled(200, 200, {PixelBox(120, 30, 170, 80)});
  const MaskIntegral integral(m);
  const CropParams p;
  SeededRng rng(8, 8);
  int accepted = 0;
  while (accepted < 1000) {
    const OverlapCrop c = sample_overlap_crop(200, 200, integral, p, 0.5, rng);
    if (!c.satisfied) continue;
    ++accepted;
    std::int64_t inside = 0;
    for (int y = c.box.y0(); y < c.box.y1(); ++y)
      for (int x = c.box.x0(); x < c.box.x1(); ++x) inside += m.get(x, y);
    ASSERT_GE(inside, 1250);
  }
}

TEST(OverlapCrop, FallbackIsBestCoverage) {
  BinaryMask m(100, 100);
  m.set(0, 0);
  m.set(99, 99);
  CropParams p;
  p.min_area_frac = 0.2;
  p.max_area_frac = 0.3;
  p.max_rejection_tries = 7;
  SeededRng rng(1, 7);
  SeededRng replay = rng;
  const OverlapCrop c = sample_overlap_crop(m, p, 1.0, rng);
  EXPECT_FALSE(c.satisfied);
  double best = -1;
  const MaskIntegral integral(m);
  for (int i = 0; i < 7; ++i) {
    const double cov = integral.count(sample_area_crop(100, 100, p, replay)) / 2.0;
    best = std::max(best, cov);
  }
  EXPECT_EQ(c.coverage, best);
  EXPECT_THROW(sample_overlap_crop(BinaryMask(10, 10), p, 0.5, rng), NoSalientObject);
}

TEST(RandGray, AllTrueIsIdentity) {
  const RasterImage img(10, 10, 3, 33);
  SeededRng rng(1, 1);
  EXPECT_EQ(rand_gray_background(img, BinaryMask(10, 10, true), rng), img);
}

TEST(RandGray, AllFalseIsSingleGray) {
  RasterImage img(10, 10, 3);
  for (std::size_t i = 0; i < img.data().size(); ++i) img.data()[i] = static_cast<std::uint8_t>(i * 7);
  SeededRng rng(2, 1);
  const RasterImage out = rand_gray_background(img, BinaryMask(10, 10, false), rng);
  for (auto v : out.data()) ASSERT_EQ(v, out.data()[0]);
}

TEST(RandGray, SalientUntouchedRandomMasks) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    RasterImage img(64, 64, 3);
    SeededRng fill(seed, 11);
    for (auto& v : img.data()) v = static_cast<std::uint8_t>(fill.uniform_int(0, 255));
    const BinaryMask m = random_mask(seed);
    SeededRng rng(seed, 12);
    const RasterImage out = rand_gray_background(img, m, rng);
    std::optional<std::uint8_t> gray;
    for (int y = 0; y < 64; ++y) {
      for (int x = 0; x < 64; ++x) {
        for (int c = 0; c < 3; ++c) {
          if (m.get(x, y)) {
            ASSERT_EQ(out.at(x, y, c), img.at(x, y, c));
          } else {
            if (!gray) gray = out.at(x, y, c);
            ASSERT_EQ(out.at(x, y, c), *gray);
          }
        }
      }
    }
  }
}

TEST(RandGray, HalfMask) {
  RasterImage img(20, 10, 3);
  for (std::size_t i = 0; i < img.data().size(); ++i) img.data()[i] = static_cast<std::uint8_t>(i);
  const BinaryMask m = filled(20, 10, {PixelBox(0, 0, 10, 10)});
  SeededRng rng(3, 3);
  const RasterImage out = rand_gray_background(img, m, rng);
  for (int y = 0; y < 10; ++y) {
    for (int x = 0; x < 20; ++x) {
      for (int c = 0; c < 3; ++c) {
        if (x < 10) EXPECT_EQ(out.at(x, y, c), img.at(x, y, c));
        else EXPECT_EQ(out.at(x, y, c), out.at(10, 0, 0));
      }
    }
  }
}

}  // namespace
}  // namespace viewforge
