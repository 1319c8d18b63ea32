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

#include <benchmark/benchmark.h>

#include <cmath>

#include "viewforge/core/raster.hpp"
#include "viewforge/core/rng.hpp"
#include "viewforge/gdomain.hpp"
#include "viewforge/kernels.hpp"
#include "viewforge/reference.hpp"

namespace vf = viewforge;
namespace gd = viewforge::gdomain;

namespace {

vf::FloatImage noise(int w, int h, int ch, std::uint64_t seed) {
  vf::FloatImage img(w, h, ch);
  vf::SeededRng rng(seed, 1);
  for (double& v : img.data()) v = rng.uniform(0.0, 255.0);
  return img;
}

vf::FloatImage field(int w, int h, double amp, std::uint64_t seed) {
  vf::FloatImage f(w, h, 1);
  vf::SeededRng rng(seed, 2);
  for (double& v : f.data()) v = rng.uniform(-amp, amp);
  return f;
}

void BM_ResizeKernel(benchmark::State& st) {
  const vf::FloatImage src = noise(400, 300, 3, 1);
  for (auto _ : st) benchmark::DoNotOptimize(vf::kernels::resize_bilinear(src, 256, 192));
}

void BM_ResizeReference(benchmark::State& st) {
  const vf::FloatImage src = noise(400, 300, 3, 1);
  for (auto _ : st) benchmark::DoNotOptimize(vf::reference::resize_bilinear(src, 256, 192));
}

void BM_BlurKernel(benchmark::State& st) {
  const vf::FloatImage src = noise(256, 256, 3, 2);
  for (auto _ : st) benchmark::DoNotOptimize(vf::kernels::gaussian_blur(src, 4.0, 12));
}

void BM_BlurReference(benchmark::State& st) {
  const vf::FloatImage src = noise(256, 256, 3, 2);
  for (auto _ : st) benchmark::DoNotOptimize(vf::reference::gaussian_blur(src, 4.0, 12));
}

void BM_RemapKernel(benchmark::State& st) {
  const vf::FloatImage src = noise(256, 256, 3, 3);
  const vf::FloatImage dx = field(256, 256, 20.0, 4), dy = field(256, 256, 20.0, 5);
  for (auto _ : st) benchmark::DoNotOptimize(vf::kernels::remap_reflect(src, dx, dy));
}

void BM_RemapReference(benchmark::State& st) {
  const vf::FloatImage src = noise(256, 256, 3, 3);
  const vf::FloatImage dx = field(256, 256, 20.0, 4), dy = field(256, 256, 20.0, 5);
  for (auto _ : st) benchmark::DoNotOptimize(vf::reference::remap_reflect(src, dx, dy));
}

void BM_Poisson(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const auto pc = static_cast<gd::Preconditioner>(st.range(1));
  const vf::FloatImage boundary = noise(n, n, 3, 6);
  vf::BinaryMask omega(n, n);
  for (int y = 1; y < n - 1; ++y)
    for (int x = 1; x < n - 1; ++x) omega.set(x, y);
  const gd::SolveDomain domain(omega, boundary);
  const gd::GuidanceField g = gd::import_gradients(noise(n, n, 3, 7), omega);
  gd::SolverSettings s;
  s.preconditioner = pc;
  int iterations = 0;
  for (auto _ : st) {
    const gd::PoissonSolution sol = gd::solve_poisson(domain, g, s);
    iterations = sol.channels[0].iterations;
    benchmark::DoNotOptimize(sol.values.data().data());
  }
  st.counters["iterations"] = iterations;
}

}  // namespace

BENCHMARK(BM_ResizeKernel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ResizeReference)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BlurKernel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BlurReference)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RemapKernel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RemapReference)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Poisson)
    ->ArgsProduct({{64, 128, 256},
                   {static_cast<int>(gd::Preconditioner::kNone), static_cast<int>(gd::Preconditioner::kJacobi),
                    static_cast<int>(gd::Preconditioner::kMic0)}})
    ->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
