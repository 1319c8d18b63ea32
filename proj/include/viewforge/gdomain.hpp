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

#include <utility>
#include <vector>

#include "viewforge/core/raster.hpp"

// Gradient-domain editing on masked pixel domains.
//
// For every interior pixel p in Omega with in-image 4-neighbourhood N_p the
// solvers enforce
//
//   |N_p| f_p - sum_{q in N_p, q in Omega} f_q
//       = sum_{q in N_p, q not in Omega} f*_q + div v(p)
//
// where f* are the boundary values and div v(p) = sum_{q in N_p} v_pq with
// pairwise guidance v_pq (v_pq = g_p - g_q when importing the gradients of g).
// Neighbours outside the image drop out of N_p, so a domain touching the
// image border sees a zero-flux condition there.
namespace viewforge::gdomain {

enum class Preconditioner { kNone, kJacobi, kMic0 };

struct SolverSettings {
  double tolerance = 1e-4;  // residual max-norm, 0-255 units
  int max_iterations = 10000;
  Preconditioner preconditioner = Preconditioner::kMic0;
  int checkpoint_interval = 10;

  void validate() const;
};

// Omega plus the values f* read on its frontier. Throws DegenerateGeometry if
// Omega is empty or any of its 4-connected components has no in-image
// neighbour outside Omega (the system would be singular).
class SolveDomain {
 public:
  SolveDomain(BinaryMask interior, FloatImage boundary);

  const BinaryMask& interior() const noexcept { return interior_; }
  const FloatImage& boundary() const noexcept { return boundary_; }
  int width() const noexcept { return interior_.width(); }
  int height() const noexcept { return interior_.height(); }
  int channels() const noexcept { return boundary_.channels(); }

 private:
  BinaryMask interior_;
  FloatImage boundary_;
};

// div v per interior pixel and channel; entries outside Omega are ignored.
struct GuidanceField {
  FloatImage divergence;
};

struct ChannelReport {
  int iterations = 0;
  double residual = 0.0;
  // Residual max-norm of the best iterate so far, one entry per checkpoint.
  std::vector<double> checkpoints;
};

struct PoissonSolution {
  FloatImage values;  // solution on Omega, boundary values elsewhere
  std::vector<ChannelReport> channels;
};

// Preconditioned conjugate gradient on the SPD system above, one solve per
// channel. `initial`, when given, seeds the iterate on Omega. Throws
// NoConvergence if the residual stays above tolerance after max_iterations.
PoissonSolution solve_poisson(const SolveDomain& domain, const GuidanceField& guidance,
                              const SolverSettings& settings, const FloatImage* initial = nullptr);

// Left-hand side minus right-hand side at each interior pixel (zero outside).
FloatImage equation_residual(const SolveDomain& domain, const GuidanceField& guidance,
                             const FloatImage& values);

// div v for v_pq = g_p - g_q over all in-image neighbours.
GuidanceField import_gradients(const FloatImage& g, const BinaryMask& interior);

// As import_gradients, but a pair keeps its gradient only when p or q is an
// edge pixel.
GuidanceField edge_masked_gradients(const FloatImage& g, const BinaryMask& interior,
                                    const BinaryMask& edges);

// ---- applications -------------------------------------------------------

struct EdgeThresholds {
  double low = 30.0;
  double high = 45.0;
};

// Canny-style edges on the luma channel: 3x3 Sobel with replicated borders,
// L1 magnitude, non-maximum suppression, hysteresis over 8-neighbours.
BinaryMask detect_edges(const RasterImage& img, EdgeThresholds t = {});

// Region given in source coordinates; pixel (x, y) of src lands on
// (x + dx, y + dy) of dst.
struct Offset {
  int dx = 0;
  int dy = 0;
};

enum class CloneMode { kImportGradients, kMixedGradients };

// Poisson blending: solves over the shifted region with src gradients as
// guidance and dst as boundary. Pixels outside the region are dst bitwise.
RasterImage seamless_clone(const RasterImage& src, const RasterImage& dst, const BinaryMask& region,
                           Offset offset, const SolverSettings& s,
                           CloneMode mode = CloneMode::kImportGradients);

// Domain and guidance seamless_clone solves, for audits.
std::pair<SolveDomain, GuidanceField> seamless_clone_system(const RasterImage& src,
                                                            const RasterImage& dst,
                                                            const BinaryMask& region, Offset offset,
                                                            CloneMode mode);

// Full-image flattening: Omega is every pixel off the image border, the
// border ring supplies boundary values. Image must be at least 3x3.
RasterImage texture_flatten(const RasterImage& img, EdgeThresholds t, const SolverSettings& s);
RasterImage texture_flatten_with_edges(const RasterImage& img, const BinaryMask& edges,
                                       const SolverSettings& s);

// Flattening of non-salient pixels only (TFNS). Salient pixels and the image
// border act as boundary and are returned unchanged.
RasterImage texture_flatten_region(const RasterImage& img, const BinaryMask& salient,
                                   EdgeThresholds t, const SolverSettings& s);
RasterImage texture_flatten_region(const RasterImage& img, const BinaryMask& salient,
                                   const BinaryMask& edges, const SolverSettings& s);

// Pre-commit solution of texture_flatten_region. An empty domain returns the
// input values and no channel reports.
PoissonSolution texture_flatten_region_solve(const RasterImage& img, const BinaryMask& salient,
                                             const BinaryMask& edges, const SolverSettings& s);

// Omega used by the flattening operations.
BinaryMask flatten_domain(int width, int height, const BinaryMask* salient);

}  // namespace viewforge::gdomain
