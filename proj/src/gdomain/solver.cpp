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

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <optional>
#include <string>

#include "viewforge/error.hpp"
#include "viewforge/gdomain.hpp"

namespace viewforge::gdomain {
namespace {

constexpr int kDx[4] = {1, 0, -1, 0};
constexpr int kDy[4] = {0, 1, 0, -1};

// Omega's bounding box plus a one-cell ring of padding. Vectors live on
// the whole grid and are kept at zero off Omega, so the operator is a plain
// masked 5-point stencil.
struct GridSystem {
  int gw = 0;
  int gh = 0;
  int ox = 0;  // image x of grid column 1
  int oy = 0;
  std::vector<double> inside;  // 1 on Omega, 0 elsewhere
  std::vector<double> diag;    // |N_p| on Omega
  std::vector<int> cells;      // Omega cells, raster order

  std::size_t size() const noexcept { return inside.size(); }
  int image_x(int cell) const noexcept { return cell % gw - 1 + ox; }
  int image_y(int cell) const noexcept { return cell / gw - 1 + oy; }
};

GridSystem build_system(const BinaryMask& omega) {
  const int w = omega.width();
  const int h = omega.height();
  int x0 = w, y0 = h, x1 = -1, y1 = -1;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (!omega.get(x, y)) continue;
      x0 = std::min(x0, x);
      y0 = std::min(y0, y);
      x1 = std::max(x1, x);
      y1 = std::max(y1, y);
    }
  }
  GridSystem sys;
  sys.ox = x0;
  sys.oy = y0;
  sys.gw = x1 - x0 + 3;
  sys.gh = y1 - y0 + 3;
  sys.inside.assign(static_cast<std::size_t>(sys.gw) * sys.gh, 0.0);
  sys.diag.assign(sys.inside.size(), 0.0);
  for (int gy = 1; gy + 1 < sys.gh; ++gy) {
    for (int gx = 1; gx + 1 < sys.gw; ++gx) {
      const int x = gx - 1 + x0;
      const int y = gy - 1 + y0;
      if (!omega.get(x, y)) continue;
      const int cell = gy * sys.gw + gx;
      sys.inside[cell] = 1.0;
      sys.diag[cell] = (x > 0) + (x + 1 < w) + (y > 0) + (y + 1 < h);
      sys.cells.push_back(cell);
    }
  }
  return sys;
}

// Vectors hold `ch` interleaved channels per cell; the channels are
// independent systems sharing one operator.
// CH > 0 fixes the channel count at compile time; CH == 0 reads `ch`.
template <int CH>
void apply_operator_n(const GridSystem& sys, int ch_rt, const std::vector<double>& v, std::vector<double>& out) {
  const int ch = CH > 0 ? CH : ch_rt;
  const std::size_t gw = sys.gw;
  const std::size_t end = sys.size() - gw - 1;
  const std::size_t up = gw * ch;
  const double* m = sys.inside.data();
  const double* d = sys.diag.data();
  for (std::size_t i = gw + 1; i < end; ++i) {
    const double* in = v.data() + i * ch;
    double* o = out.data() + i * ch;
    for (int c = 0; c < ch; ++c) {
      o[c] = m[i] * (d[i] * in[c] - (in[c - ch] + in[c + ch] + in[c - up] + in[c + up]));
    }
  }
}

void apply_operator(const GridSystem& sys, int ch, const std::vector<double>& v, std::vector<double>& out) {
  if (ch == 1) return apply_operator_n<1>(sys, ch, v, out);
  if (ch == 3) return apply_operator_n<3>(sys, ch, v, out);
  apply_operator_n<0>(sys, ch, v, out);
}

template <int CH, typename Op>
void reduce_n(const std::vector<double>& a, const std::vector<double>& b, int ch_rt, std::vector<double>& acc, Op op) {
  const int ch = CH > 0 ? CH : ch_rt;
  double local[CH > 0 ? CH : 1];
  double* out = CH > 0 ? local : acc.data();
  for (int c = 0; c < ch; ++c) out[c] = 0.0;
  for (std::size_t i = 0; i < a.size(); i += ch) {
    for (int c = 0; c < ch; ++c) out[c] = op(out[c], a[i + c], b[i + c]);
  }
  if (CH > 0) std::copy(out, out + ch, acc.begin());
}

template <typename Op>
void reduce(const std::vector<double>& a, const std::vector<double>& b, int ch, std::vector<double>& acc, Op op) {
  if (ch == 1) return reduce_n<1>(a, b, ch, acc, op);
  if (ch == 3) return reduce_n<3>(a, b, ch, acc, op);
  reduce_n<0>(a, b, ch, acc, op);
}

void dot(const std::vector<double>& a, const std::vector<double>& b, int ch, std::vector<double>& acc) {
  reduce(a, b, ch, acc, [](double s, double u, double v) { return s + u * v; });
}

void max_abs(const std::vector<double>& a, int ch, std::vector<double>& acc) {
  reduce(a, a, ch, acc, [](double m, double u, double) { return std::max(m, std::abs(u)); });
}

// Modified incomplete Cholesky, zero fill-in, raster ordering.
class Mic0 {
 public:
  explicit Mic0(const GridSystem& sys) : sys_(sys), inv_(sys.size(), 0.0) {
    constexpr double kTau = 0.97;
    constexpr double kSigma = 0.25;
    const int gw = sys.gw;
    for (int i : sys.cells) {
      double e = sys.diag[i];
      const double pl = inv_[i - 1];
      const double pu = inv_[i - gw];
      // Dropped fill-in between left and its down neighbour, up and its right.
      e -= pl * pl * (1.0 + kTau * sys.inside[i - 1 + gw]);
      e -= pu * pu * (1.0 + kTau * sys.inside[i - gw + 1]);
      if (e < kSigma * sys.diag[i]) e = sys.diag[i];
      inv_[i] = 1.0 / std::sqrt(e);
    }
    left_.assign(sys.size(), 0.0);
    up_.assign(sys.size(), 0.0);
    sq_.assign(sys.size(), 0.0);
    for (int i : sys.cells) {
      left_[i] = inv_[i] * inv_[i - 1];
      up_[i] = inv_[i] * inv_[i - gw];
      sq_[i] = inv_[i] * inv_[i];
    }
  }

  void apply(const std::vector<double>& r, std::vector<double>& z, int ch) const {
    if (ch == 1) return sweep<1>(r, z, ch);
    if (ch == 3) return sweep<3>(r, z, ch);
    sweep<0>(r, z, ch);
  }

 private:
  template <int CH>
  void sweep(const std::vector<double>& r, std::vector<double>& z, int ch_rt) const {
    const int ch = CH > 0 ? CH : ch_rt;
    const std::size_t gw = sys_.gw;
    const std::size_t up = gw * ch;
    const double* inv = inv_.data();
    const double* lw = left_.data();
    const double* uw = up_.data();
    const double* sq = sq_.data();
    scratch_.assign(r.size(), 0.0);
    double* q = scratch_.data();
    const std::size_t end = sys_.size() - gw - 1;
    for (std::size_t i = gw + 1; i < end; ++i) {
      const std::size_t k = i * ch;
      for (int c = 0; c < ch; ++c) {
        q[k + c] = (r[k + c] * inv[i] + uw[i] * q[k + c - up]) + lw[i] * q[k + c - ch];
      }
    }
    std::fill(z.begin(), z.end(), 0.0);
    for (std::size_t i = end; i-- > gw + 1;) {
      const std::size_t k = i * ch;
      for (int c = 0; c < ch; ++c) {
        z[k + c] = (q[k + c] * inv[i] + sq[i] * z[k + c + up]) + sq[i] * z[k + c + ch];
      }
    }
  }

  const GridSystem& sys_;
  std::vector<double> inv_;  // 0 off Omega
  std::vector<double> left_, up_, sq_;
  mutable std::vector<double> scratch_;
};

class Preconditioning {
 public:
  Preconditioning(const GridSystem& sys, Preconditioner kind) : kind_(kind) {
    if (kind == Preconditioner::kMic0) mic_.emplace(sys);
    if (kind == Preconditioner::kJacobi) {
      inv_diag_.assign(sys.size(), 0.0);
      for (int i : sys.cells) inv_diag_[i] = 1.0 / sys.diag[i];
    }
  }

  void apply(const std::vector<double>& r, std::vector<double>& z, int ch) const {
    switch (kind_) {
      case Preconditioner::kNone:
        z = r;
        return;
      case Preconditioner::kJacobi:
        for (std::size_t i = 0; i < inv_diag_.size(); ++i) {
          for (int c = 0; c < ch; ++c) z[i * ch + c] = r[i * ch + c] * inv_diag_[i];
        }
        return;
      case Preconditioner::kMic0:
        mic_->apply(r, z, ch);
        return;
    }
  }

 private:
  Preconditioner kind_;
  std::optional<Mic0> mic_;
  std::vector<double> inv_diag_;
};

// Preconditioned CG run in lockstep over the channels. Each channel keeps
// its own scalars and its own stopping test.
std::vector<ChannelReport> conjugate_gradient(const GridSystem& sys, const Preconditioning& pre, int ch,
                                              const std::vector<double>& b, std::vector<double>& x,
                                              const SolverSettings& s) {
  const std::size_t n = b.size();
  std::vector<double> r(n, 0.0), z(n, 0.0), p(n, 0.0), ap(n, 0.0);
  std::vector<ChannelReport> reports(ch);
  std::vector<double> res(ch), best_res(ch), rz(ch), tmp(ch), pap(ch);
  std::vector<int> it(ch, 0);
  std::vector<char> active(ch, 1), confirm(ch, 0), restart(ch, 0);

  auto true_residual = [&](const std::vector<char>& which) {
    apply_operator(sys, ch, x, ap);
    for (std::size_t i = 0; i < n; i += ch) {
      for (int c = 0; c < ch; ++c) {
        if (which[c]) r[i + c] = b[i + c] - ap[i + c];
      }
    }
  };
  auto copy_channel = [&](const std::vector<double>& from, std::vector<double>& to, int c) {
    for (std::size_t i = c; i < n; i += ch) to[i] = from[i];
  };

  const std::vector<char> all(ch, 1);
  true_residual(all);
  max_abs(r, ch, res);
  std::vector<double> best_x = x;
  for (int c = 0; c < ch; ++c) {
    best_res[c] = res[c];
    reports[c].checkpoints.push_back(res[c]);
    active[c] = res[c] > s.tolerance && s.max_iterations > 0;
  }

  pre.apply(r, z, ch);
  p = z;
  dot(r, z, ch, rz);

  auto any = [](const std::vector<char>& v) { return std::find(v.begin(), v.end(), 1) != v.end(); };
  while (any(active)) {
    apply_operator(sys, ch, p, ap);
    dot(p, ap, ch, pap);
    for (int c = 0; c < ch; ++c) {
      if (active[c] && !(pap[c] > 0.0)) active[c] = 0;
    }
    if (!any(active)) break;
    for (int c = 0; c < ch; ++c) tmp[c] = active[c] ? rz[c] / pap[c] : 0.0;
    // Stopped channels step by zero, which leaves them unchanged.
    for (std::size_t i = 0; i < n; i += ch) {
      for (int c = 0; c < ch; ++c) {
        x[i + c] += tmp[c] * p[i + c];
        r[i + c] -= tmp[c] * ap[i + c];
      }
    }
    max_abs(r, ch, tmp);
    bool need_confirm = false;
    for (int c = 0; c < ch; ++c) {
      confirm[c] = 0;
      restart[c] = 0;
      if (!active[c]) continue;
      ++it[c];
      res[c] = tmp[c];
      confirm[c] = res[c] <= s.tolerance;
      need_confirm = need_confirm || confirm[c];
    }
    if (need_confirm) {
      // The recursive residual drifts; confirm against b - Ax and restart
      // from the true residual if it disagrees.
      true_residual(confirm);
      max_abs(r, ch, tmp);
      for (int c = 0; c < ch; ++c) {
        if (!confirm[c]) continue;
        res[c] = tmp[c];
        restart[c] = res[c] > s.tolerance;
      }
    }

    pre.apply(r, z, ch);
    dot(r, z, ch, tmp);
    for (int c = 0; c < ch; ++c) {
      if (!active[c]) continue;
      if (restart[c]) {
        copy_channel(z, p, c);
        rz[c] = tmp[c];
      } else {
        if (res[c] < best_res[c]) {
          best_res[c] = res[c];
          copy_channel(x, best_x, c);
        }
        if (it[c] % s.checkpoint_interval == 0) reports[c].checkpoints.push_back(best_res[c]);
        if (res[c] <= s.tolerance) {
          active[c] = 0;
          continue;
        }
        const double beta = tmp[c] / rz[c];
        rz[c] = tmp[c];
        for (std::size_t i = c; i < n; i += ch) p[i] = z[i] + beta * p[i];
      }
      if (it[c] >= s.max_iterations) active[c] = 0;
    }
  }

  std::vector<char> fallback(ch, 0);
  for (int c = 0; c < ch; ++c) {
    if (res[c] > s.tolerance && best_res[c] < res[c]) {
      fallback[c] = 1;
      copy_channel(best_x, x, c);
    }
  }
  if (any(fallback)) {
    true_residual(fallback);
    max_abs(r, ch, tmp);
    for (int c = 0; c < ch; ++c) {
      if (fallback[c]) res[c] = tmp[c];
    }
  }
  for (int c = 0; c < ch; ++c) {
    reports[c].checkpoints.push_back(std::min(reports[c].checkpoints.back(), res[c]));
    reports[c].iterations = it[c];
    reports[c].residual = res[c];
  }
  return reports;
}

}  // namespace

void SolverSettings::validate() const {
  if (!(tolerance > 0.0)) throw ConfigError("tolerance: must be positive");
  if (max_iterations < 1) throw ConfigError("max_iterations: must be at least 1");
  if (checkpoint_interval < 1) throw ConfigError("checkpoint_interval: must be at least 1");
}

SolveDomain::SolveDomain(BinaryMask interior, FloatImage boundary)
    : interior_(std::move(interior)), boundary_(std::move(boundary)) {
  const int w = interior_.width();
  const int h = interior_.height();
  if (boundary_.width() != w || boundary_.height() != h) {
    throw GeometryError("boundary values do not match the domain size");
  }
  if (!interior_.any()) throw DegenerateGeometry("solve domain is empty");

  // Every component needs a Dirichlet neighbour.
  std::vector<std::uint8_t> seen(static_cast<std::size_t>(w) * h, 0);
  std::deque<int> queue;
  for (int start = 0; start < w * h; ++start) {
    if (seen[start] || !interior_.get(start % w, start / w)) continue;
    bool anchored = false;
    seen[start] = 1;
    queue.push_back(start);
    while (!queue.empty()) {
      const int cur = queue.front();
      queue.pop_front();
      const int x = cur % w;
      const int y = cur / w;
      for (int d = 0; d < 4; ++d) {
        const int nx = x + kDx[d];
        const int ny = y + kDy[d];
        if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
        if (!interior_.get(nx, ny)) {
          anchored = true;
          continue;
        }
        if (!seen[ny * w + nx]) {
          seen[ny * w + nx] = 1;
          queue.push_back(ny * w + nx);
        }
      }
    }
    if (!anchored) {
      throw DegenerateGeometry("a domain component has no boundary pixel; the system is singular");
    }
  }
}

PoissonSolution solve_poisson(const SolveDomain& domain, const GuidanceField& guidance,
                              const SolverSettings& settings, const FloatImage* initial) {
  settings.validate();
  const int w = domain.width();
  const int ch = domain.channels();
  const FloatImage& fstar = domain.boundary();
  const FloatImage& div = guidance.divergence;
  if (div.width() != w || div.height() != domain.height() || div.channels() != ch) {
    throw GeometryError("guidance field does not match the domain");
  }
  if (initial && (initial->width() != w || initial->height() != domain.height() ||
                  initial->channels() != ch)) {
    throw GeometryError("initial guess does not match the domain");
  }

  const GridSystem sys = build_system(domain.interior());
  const Preconditioning pre(sys, settings.preconditioner);
  const std::size_t n = sys.size() * ch;

  std::vector<double> b(n, 0.0), x(n, 0.0);
  for (int cell : sys.cells) {
    const int px = sys.image_x(cell);
    const int py = sys.image_y(cell);
    for (int c = 0; c < ch; ++c) {
      double rhs = div.at(px, py, c);
      for (int d = 0; d < 4; ++d) {
        const int nx = px + kDx[d];
        const int ny = py + kDy[d];
        if (nx < 0 || ny < 0 || nx >= w || ny >= domain.height()) continue;
        if (!domain.interior().get(nx, ny)) rhs += fstar.at(nx, ny, c);
      }
      b[cell * ch + c] = rhs;
      x[cell * ch + c] = initial ? initial->at(px, py, c) : fstar.at(px, py, c);
    }
  }
  PoissonSolution out{fstar, conjugate_gradient(sys, pre, ch, b, x, settings)};
  for (int c = 0; c < ch; ++c) {
    const ChannelReport& rep = out.channels[c];
    if (rep.residual > settings.tolerance) {
      throw NoConvergence("poisson solve stopped at residual " + std::to_string(rep.residual) +
                              " after " + std::to_string(rep.iterations) + " iterations",
                          rep.residual, rep.iterations);
    }
  }
  for (int cell : sys.cells) {
    for (int c = 0; c < ch; ++c) out.values.at(sys.image_x(cell), sys.image_y(cell), c) = x[cell * ch + c];
  }
  return out;
}

FloatImage equation_residual(const SolveDomain& domain, const GuidanceField& guidance,
                             const FloatImage& values) {
  const int w = domain.width();
  const int h = domain.height();
  const BinaryMask& omega = domain.interior();
  FloatImage res(w, h, domain.channels(), 0.0);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (!omega.get(x, y)) continue;
      for (int c = 0; c < domain.channels(); ++c) {
        double lhs = 0.0;
        double rhs = guidance.divergence.at(x, y, c);
        for (int d = 0; d < 4; ++d) {
          const int nx = x + kDx[d];
          const int ny = y + kDy[d];
          if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
          lhs += values.at(x, y, c);
          if (omega.get(nx, ny)) {
            lhs -= values.at(nx, ny, c);
          } else {
            rhs += domain.boundary().at(nx, ny, c);
          }
        }
        res.at(x, y, c) = lhs - rhs;
      }
    }
  }
  return res;
}

GuidanceField import_gradients(const FloatImage& g, const BinaryMask& interior) {
  const BinaryMask all(g.width(), g.height(), true);
  return edge_masked_gradients(g, interior, all);
}

GuidanceField edge_masked_gradients(const FloatImage& g, const BinaryMask& interior,
                                    const BinaryMask& edges) {
  const int w = g.width();
  const int h = g.height();
  if (interior.width() != w || interior.height() != h || edges.width() != w || edges.height() != h) {
    throw GeometryError("guidance masks do not match the image");
  }
  GuidanceField out{FloatImage(w, h, g.channels(), 0.0)};
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (!interior.get(x, y)) continue;
      for (int d = 0; d < 4; ++d) {
        const int nx = x + kDx[d];
        const int ny = y + kDy[d];
        if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
        if (!edges.get(x, y) && !edges.get(nx, ny)) continue;
        for (int c = 0; c < g.channels(); ++c) {
          out.divergence.at(x, y, c) += g.at(x, y, c) - g.at(nx, ny, c);
        }
      }
    }
  }
  return out;
}

}  // namespace viewforge::gdomain
