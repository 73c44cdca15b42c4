// Copyright 2026 The lretract Authors
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

#include "lretract/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <numeric>

#include "lretract/domains.hpp"
#include "lretract/errors.hpp"
#include "lretract/optimize.hpp"
#include "lretract/sampling.hpp"

namespace lretract {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kStructuredAngles = 256;
constexpr double kInfeasibleMargin = 0.01;

double lemma41_value(Complex alpha, double beta_abs, Complex l) {
  return std::abs(1.0 + alpha * (l - 1.0)) + beta_abs * std::abs(l - 1.0) - 1.0;
}

double gauge(const CVec& z) { return gauge_indicatrix_E0(z); }

// Exact extreme points of the gauge ball, (1, e^{it}, 0) on a grid and e3.
double structured_norm(const LinearMap3& m) {
  double best = gauge(apply(m, CVec{0.0, 0.0, 1.0}));
  for (Complex u : circle_grid(kStructuredAngles)) {
    best = std::max(best, gauge(apply(m, CVec{1.0, u, 0.0})));
  }
  return best;
}

struct Probe {
  CVec z;
  double value;
};

CVec normalized(const CVec& z) {
  const double g = gauge(z);
  return g > 0.0 ? z * Complex(1.0 / g) : z;
}

std::string fmt_eps(double e) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", e);
  return buf;
}

}  // namespace

Lemma41Result lemma41_check(Complex alpha, Complex beta, int grid) {
  if (grid < 64) throw SpecError("lemma41_check: grid must be >= 64");
  const double b = std::abs(beta);
  Lemma41Result out{-std::numeric_limits<double>::infinity(), 0.0};
  const auto visit = [&](Complex l) {
    const double v = lemma41_value(alpha, b, l);
    if (v > out.max_violation) {
      out.max_violation = v;
      out.witness = l;
    }
  };
  const int angles = 4 * grid;
  for (int i = 0; i <= grid; ++i) {
    const double r = static_cast<double>(i) / grid;
    for (int k = 0; k < angles; ++k) visit(std::polar(r, 2.0 * kPi * k / angles));
  }
  for (int k = 0; k <= 20; ++k) {
    const double t = std::ldexp(1.0, -k);
    visit(std::polar(1.0, t));
    visit(std::polar(1.0, -t));
  }
  visit(-1.0);
  return out;
}

double l3_obstruction(Complex a, double r) {
  const double m = std::abs(a);
  if (!(m < 1.0)) throw SpecError("l3_obstruction: needs |a| < 1");
  if (!(r > 0.0 && r < 1.0)) throw SpecError("l3_obstruction: needs 0 < r < 1");
  const double r2 = r * r;
  const double lhs = r2 * (1.0 + m * m) + 2.0 * (1.0 - r2);
  const double inner = m * r2 + 1.0 - r2;
  return lhs - (1.0 + inner * inner);
}

CVec apply(const LinearMap3& m, const CVec& z) {
  require_dim(z, 3, "LinearMap3");
  CVec out(3);
  for (std::size_t i = 0; i < 3; ++i) {
    out[i] = m.m[3 * i] * z[0] + m.m[3 * i + 1] * z[1] + m.m[3 * i + 2] * z[2];
  }
  return out;
}

LinearMap3 identity_map3() {
  LinearMap3 id;
  id.m[0] = id.m[4] = id.m[8] = 1.0;
  return id;
}

double gauge_operator_norm(const LinearMap3& m, std::size_t boundary_samples, int refine_steps,
                           std::uint64_t seed) {
  for (const Complex& c : m.m) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw SpecError("gauge_operator_norm: non-finite matrix entry");
    }
  }
  std::vector<Probe> probes;
  probes.reserve(boundary_samples + kStructuredAngles + 1);
  const auto probe = [&](const CVec& z) {
    const CVec u = normalized(z);
    probes.push_back({u, gauge(apply(m, u))});
  };
  probe(CVec{0.0, 0.0, 1.0});
  for (Complex u : circle_grid(kStructuredAngles)) probe(CVec{1.0, u, 0.0});
  Sampler rng(seed);
  for (std::size_t k = 0; k < boundary_samples; ++k) {
    probe(CVec{rng.complex_normal(), rng.complex_normal(), rng.complex_normal()});
  }
  // Stable order: by value, ties by position, so refinement is reproducible.
  std::vector<std::size_t> order(probes.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return probes[a].value > probes[b].value; });
  double best = probes[order.front()].value;

  // The maximum sits on e3 or on the torus (1, e^{it}, 0), so golden-section
  // search in t around the best grid angles recovers it to rounding.
  const auto on_torus = [&](double t) { return gauge(apply(m, CVec{1.0, std::polar(1.0, t), 0.0})); };
  std::vector<std::size_t> grid(kStructuredAngles);
  std::iota(grid.begin(), grid.end(), 0);
  const auto grid_value = [&](std::size_t k) { return probes[1 + k].value; };
  std::stable_sort(grid.begin(), grid.end(),
                   [&](std::size_t a, std::size_t b) { return grid_value(a) > grid_value(b); });
  const double cell = 2.0 * kPi / static_cast<double>(kStructuredAngles);
  const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
  for (std::size_t s = 0; s < std::min<std::size_t>(4, grid.size()); ++s) {
    const double t0 = cell * static_cast<double>(grid[s]);
    double a = t0 - cell, b = t0 + cell;
    double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
    double fc = on_torus(c), fd = on_torus(d);
    for (int it = 0; it < 3 * refine_steps; ++it) {
      best = std::max({best, fc, fd});
      if (fc > fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - inv_phi * (b - a);
        fc = on_torus(c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + inv_phi * (b - a);
        fd = on_torus(d);
      }
    }
    if (refine_steps > 0) best = std::max({best, fc, fd});
  }

  const std::size_t starts = std::min<std::size_t>(8, order.size());
  for (std::size_t s = 0; s < starts; ++s) {
    Probe cur = probes[order[s]];
    double h = 0.05;
    for (int step = 0; step < refine_steps; ++step) {
      bool improved = false;
      for (std::size_t c = 0; c < 6; ++c) {
        for (double sign : {1.0, -1.0}) {
          CVec z = cur.z;
          z[c / 2] += (c % 2 == 0) ? Complex(sign * h, 0.0) : Complex(0.0, sign * h);
          if (!(gauge(z) > 0.0)) continue;
          const CVec u = normalized(z);
          const double v = gauge(apply(m, u));
          if (v > cur.value) {
            cur = {u, v};
            improved = true;
          }
        }
      }
      if (!improved) h *= 0.5;
    }
    best = std::max(best, cur.value);
  }
  return best;
}

void validate(const PlaneSpec& plane) {
  require_dim(plane.u, 3, "PlaneSpec");
  require_dim(plane.v, 3, "PlaneSpec");
  // Singular values of [u v] from its 2 x 2 Gram matrix.
  const double a = norm_sq(plane.u);
  const double c = norm_sq(plane.v);
  const double b2 = std::norm(inner(plane.v, plane.u));
  const double half = 0.5 * (a - c);
  const double smin2 = 0.5 * (a + c) - std::sqrt(half * half + b2);
  if (!(std::sqrt(std::max(smin2, 0.0)) >= 1e-10)) {
    throw SpecError("PlaneSpec: spanning vectors are dependent");
  }
}

namespace {

std::pair<CVec, CVec> orthonormal_basis(const PlaneSpec& plane) {
  const CVec e1 = plane.u * Complex(1.0 / norm(plane.u));
  CVec e2 = plane.v - e1 * inner(plane.v, e1);
  e2 = e2 * Complex(1.0 / norm(e2));
  return {e1, e2};
}

// I - k n^*, the projection onto the plane along k (with <k, n> = 1).
LinearMap3 projection_along(const CVec& k, const CVec& n) {
  LinearMap3 r = identity_map3();
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) r.m[3 * i + j] -= k[i] * std::conj(n[j]);
  }
  return r;
}

}  // namespace

CVec plane_normal(const PlaneSpec& plane) {
  validate(plane);
  const auto [e1, e2] = orthonormal_basis(plane);
  CVec n{std::conj(e1[1] * e2[2] - e1[2] * e2[1]), std::conj(e1[2] * e2[0] - e1[0] * e2[2]),
         std::conj(e1[0] * e2[1] - e1[1] * e2[0])};
  return n * Complex(1.0 / norm(n));
}

bool lemma_linret_admissible(const PlaneSpec& plane, double tol) {
  const CVec n = plane_normal(plane);
  const double n3 = std::abs(n[2]);
  return n3 <= tol || n3 >= 1.0 - tol;
}

FeasibilityResult linear_retract_feasibility(const PlaneSpec& plane, double tol,
                                             std::size_t budget) {
  const CVec n = plane_normal(plane);
  const auto [e1, e2] = orthonormal_basis(plane);
  const auto map_of = [&](std::span<const double> c) {
    const CVec k = n + e1 * Complex(c[0], c[1]) + e2 * Complex(c[2], c[3]);
    return projection_along(k, n);
  };

  FeasibilityResult out;
  out.norm = std::numeric_limits<double>::infinity();
  std::vector<double> prev_c;
  double prev_v = 0.0;
  auto objective = [&](std::span<const double> c) {
    const double v = structured_norm(map_of(c));
    ++out.evaluations;
    if (!prev_c.empty()) {
      double dc = 0.0;
      for (std::size_t i = 0; i < 4; ++i) dc += (c[i] - prev_c[i]) * (c[i] - prev_c[i]);
      dc = std::sqrt(dc);
      if (dc > 1e-9 && std::isfinite(v) && std::isfinite(prev_v)) {
        out.lipschitz = std::max(out.lipschitz, std::abs(v - prev_v) / dc);
      }
    }
    prev_c.assign(c.begin(), c.end());
    prev_v = v;
    return v;
  };

  // Starts: the kernel chart origin, the coordinate axes, then seeded points.
  std::vector<std::vector<double>> starts;
  starts.push_back({0.0, 0.0, 0.0, 0.0});
  for (std::size_t i = 0; i < 3; ++i) {
    CVec axis(3);
    axis[i] = 1.0;
    const Complex s = inner(axis, n);
    if (std::abs(s) < 1e-8) continue;
    const CVec k = axis * (1.0 / s);
    const Complex c1 = inner(k, e1), c2 = inner(k, e2);
    starts.push_back({c1.real(), c1.imag(), c2.real(), c2.imag()});
  }
  Sampler rng(0x11ECULL);
  while (starts.size() < 64) {
    const double scale = starts.size() % 2 == 0 ? 1.0 : 3.0;
    starts.push_back({scale * rng.normal(), scale * rng.normal(), scale * rng.normal(),
                      scale * rng.normal()});
  }

  const std::size_t per_start = std::max<std::size_t>(budget / starts.size(), 8);
  std::vector<double> best_c;
  for (const auto& s : starts) {
    if (out.evaluations >= budget) break;
    NelderMeadOptions opts;
    opts.max_evaluations = std::min(per_start, budget - out.evaluations);
    opts.initial_step = 0.2;
    opts.x_tol = 1e-10;
    opts.f_tol = 1e-14;
    prev_c.clear();
    const NelderMeadResult r = nelder_mead(objective, s, opts);
    if (r.value < out.norm) {
      out.norm = r.value;
      best_c = r.x;
    }
  }
  out.best = map_of(best_c);
  // The sampled estimator can only raise the (lower-bound) value.
  out.norm = std::max(out.norm, gauge_operator_norm(out.best, 4096, 30, 0));
  if (out.norm <= 1.0 + tol) {
    out.status = Feasibility::kFeasible;
  } else if (out.norm >= 1.0 + kInfeasibleMargin) {
    out.status = Feasibility::kInfeasible;
  } else {
    out.status = Feasibility::kInconclusive;
  }
  return out;
}

RemfzeroResult remfzero_decay_check(std::span<const double> eps,
                                    const std::function<Complex(const CVec&)>& f,
                                    std::size_t samples_per_shell, std::uint64_t seed) {
  RemfzeroResult out;
  Sampler rng(seed);
  const auto phases = circle_grid(64);
  for (double e : eps) {
    if (!(e > 0.0 && e < 1.0)) throw SpecError("remfzero_decay_check: eps must lie in (0, 1)");
    // The bound is invariant under O(2) x U(1), so one shell point suffices.
    double bound = 0.0;
    for (Complex ph : phases) {
      double lo = 0.0, hi = 1.0;
      for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (in_lie_ball(CVec{1.0 - e, 0.0, mid * ph}, 3)) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      bound = std::max(bound, lo);
    }
    ViolationMax shell;
    double sup = 0.0;
    for (std::size_t k = 0; k < samples_per_shell; ++k) {
      const CVec x = rng.real_sphere(2);
      const CVec z = x * (rng.unimodular() * (1.0 - e));
      const double fz = f ? std::abs(f(z)) : 0.0;
      sup = std::max(sup, fz);
      shell.add(std::max(0.0, fz - bound), z);
    }
    out.eps.push_back(e);
    out.bounds.push_back(bound);
    out.sup_f.push_back(sup);
    out.report.checks.push_back(shell.finish("shell eps=" + fmt_eps(e), 1e-12));
  }
  // Bounds must shrink as the shells approach the Shilov boundary.
  std::vector<std::size_t> order(out.eps.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return out.eps[a] > out.eps[b]; });
  ViolationMax decay;
  for (std::size_t i = 1; i < order.size(); ++i) {
    const std::size_t a = order[i - 1], b = order[i];
    const double rise = out.bounds[b] - out.bounds[a];
    decay.add(out.eps[a] > out.eps[b] && rise >= 0.0 ? std::max(rise, 1e-300) : 0.0,
              CVec{out.eps[b], out.bounds[b]});
  }
  out.report.checks.push_back(decay.finish("bounds decrease", 0.0));
  return out;
}

}  // namespace lretract
