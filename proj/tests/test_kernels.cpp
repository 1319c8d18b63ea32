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
#include <cmath>
#include <numeric>

#include "viewforge/core/rng.hpp"
#include "viewforge/kernels.hpp"
#include "viewforge/reference.hpp"

namespace viewforge {
namespace {

FloatImage random_float(int w, int h, int c, std::uint64_t seed) {
  FloatImage img(w, h, c);
  SeededRng rng(seed, 3);
  for (double& v : img.data()) v = rng.uniform(0.0, 255.0);
  return img;
}

bool bitwise_equal(const FloatImage& a, const FloatImage& b) {
  return a.width() == b.width() && a.height() == b.height() && a.channels() == b.channels() &&
         std::equal(a.data().begin(), a.data().end(), b.data().begin());
}

TEST(Kernels, ResizeMatchesReference) {
  SeededRng rng(17, 0);
  for (int i = 0; i < 25; ++i) {
    const int w = static_cast<int>(rng.uniform_int(1, 90));
    const int h = static_cast<int>(rng.uniform_int(1, 90));
    const FloatImage src = random_float(w, h, i % 2 ? 3 : 1, i);
    const int ow = static_cast<int>(rng.uniform_int(1, 140));
    const int oh = static_cast<int>(rng.uniform_int(1, 140));
    EXPECT_TRUE(bitwise_equal(kernels::resize_bilinear(src, ow, oh),
                              reference::resize_bilinear(src, ow, oh)))
        << w << "x" << h << " -> " << ow << "x" << oh;
  }
}

TEST(Kernels, BlurMatchesReference) {
  for (int i = 0; i < 12; ++i) {
    const FloatImage src = random_float(20 + 7 * i, 11 + 5 * i, 3, 100 + i);
    const double sigma = 0.3 + 0.4 * i;
    const int radius = static_cast<int>(std::ceil(3 * sigma));
    EXPECT_TRUE(bitwise_equal(kernels::gaussian_blur(src, sigma, radius),
                              reference::gaussian_blur(src, sigma, radius)));
  }
}

TEST(Kernels, BlurRadiusLargerThanImage) {
  const FloatImage src = random_float(3, 2, 1, 5);
  EXPECT_TRUE(bitwise_equal(kernels::gaussian_blur(src, 4.0, 16), reference::gaussian_blur(src, 4.0, 16)));
}

TEST(Kernels, RemapMatchesReference) {
  for (int i = 0; i < 10; ++i) {
    const int w = 16 + 9 * i;
    const int h = 12 + 6 * i;
    const FloatImage src = random_float(w, h, 3, 200 + i);
    FloatImage dx(w, h, 1), dy(w, h, 1);
    SeededRng rng(i, 77);
    for (double& v : dx.data()) v = rng.uniform(-3.0 * w, 3.0 * w);
    for (double& v : dy.data()) v = rng.uniform(-3.0 * h, 3.0 * h);
    EXPECT_TRUE(bitwise_equal(kernels::remap_reflect(src, dx, dy), reference::remap_reflect(src, dx, dy)));
  }
}

TEST(Kernels, GaussianWeightsNormalized) {
  for (double sigma : {0.1, 0.5, 2.0, 4.0}) {
    const auto w = kernels::gaussian_weights(sigma, static_cast<int>(std::ceil(4 * sigma)));
    EXPECT_NEAR(std::accumulate(w.begin(), w.end(), 0.0), 1.0, 1e-12);
    for (std::size_t i = 0; i < w.size(); ++i) EXPECT_DOUBLE_EQ(w[i], w[w.size() - 1 - i]);
  }
}

TEST(Kernels, ReflectIndex) {
  EXPECT_EQ(kernels::reflect_index(-1, 5), 0);
  EXPECT_EQ(kernels::reflect_index(-2, 5), 1);
  EXPECT_EQ(kernels::reflect_index(5, 5), 4);
  EXPECT_EQ(kernels::reflect_index(6, 5), 3);
  EXPECT_EQ(kernels::reflect_index(12, 5), 2);
  EXPECT_EQ(kernels::reflect_index(3, 1), 0);
  for (int i = -40; i < 40; ++i) {
    const int r = kernels::reflect_index(i, 7);
    EXPECT_GE(r, 0);
    EXPECT_LT(r, 7);
  }
}

TEST(Kernels, ReflectCoordStaysInside) {
  SeededRng rng(8, 8);
  for (int i = 0; i < 10000; ++i) {
    const int n = static_cast<int>(rng.uniform_int(1, 50));
    const double r = kernels::reflect_coord(rng.uniform(-500, 500), n);
    ASSERT_GE(r, 0.0);
    ASSERT_LE(r, n - 1.0);
  }
}

}  // namespace
}  // namespace viewforge
