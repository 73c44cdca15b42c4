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

#include "lretract/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "lretract/errors.hpp"
#include "lretract/maps.hpp"
#include "lretract/optimize.hpp"
#include "lretract/sampling.hpp"

namespace lretract {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kFeasibleSlack = 1e-12;
constexpr std::size_t kGridPoints = 256;
constexpr std::size_t kFineGridPoints = 4096;
constexpr std::uint64_t kFamilySeed = 0xCA7A7E0D0123ULL;

// p(a, b), or -inf when either value left the open disc.
double poincare_or_skip(Complex a, Complex b) {
  if (!(std::abs(a) < 1.0) || !(std::abs(b) < 1.0)) return -kInf;
  return std::atanh(moebius_distance(a, b));
}

Complex moebius_shift(Complex a, Complex x) {
  return (x + a) / (1.0 + std::conj(a) * x);
}

// Keeps a running max over members that may throw (pole of Psi_omega etc.).
class FamilyMax {
 public:
  void add(const std::function<std::pair<Complex, Complex>()>& member) {
    try {
      const auto [fz, fw] = member();
      best_ = std::max(best_, poincare_or_skip(fz, fw));
    } catch (const Error&) {
    }
  }
  double value() const { return std::max(best_, 0.0); }

 private:
  double best_ = 0.0;
};

void tetrablock_family(FamilyMax& acc, const CVec& z, const CVec& w, int family_size) {
  const auto swap12 = [](const CVec& x) { return CVec{x[1], x[0], x[2]}; };
  const CVec zs = swap12(z);
  const CVec ws = swap12(w);
  for (Complex omega : circle_sequence(static_cast<std::size_t>(std::max(family_size, 1)))) {
    acc.add([&] { return std::pair{psi_omega(omega, z), psi_omega(omega, w)}; });
    acc.add([&] { return std::pair{psi_omega(omega, zs), psi_omega(omega, ws)}; });
  }
}

// sup of |sum u_j x_j| over the Shilov boundary of the Lie ball: the largest
// singular value of the real 2 x n matrix [Re u; Im u].
double lie_dual_norm(const CVec& u) {
  double a = 0.0, b = 0.0, c = 0.0;
  for (Complex uj : u) {
    a += uj.real() * uj.real();
    b += uj.real() * uj.imag();
    c += uj.imag() * uj.imag();
  }
  const double half = 0.5 * (a - c);
  return std::sqrt(0.5 * (a + c) + std::sqrt(half * half + b * b));
}

double indicatrix_dual_norm(const CVec& u) {
  return std::max(std::abs(u[0]) + std::abs(u[1]), std::abs(u[2]));
}

Complex linear(const CVec& u, const CVec& x) {
  Complex acc{};
  for (std::size_t j = 0; j < u.dim(); ++j) acc += u[j] * x[j];
  return acc;
}

CVec conj_vec(const CVec& v) {
  CVec out(v.dim());
  for (std::size_t j = 0; j < v.dim(); ++j) out[j] = std::conj(v[j]);
  return out;
}

template <class DualNorm>
void linear_family(FamilyMax& acc, const CVec& z, const CVec& w, int family_size,
                   std::vector<CVec> structured, DualNorm dual) {
  Sampler rng(kFamilySeed);
  for (int k = 0; k < family_size; ++k) structured.push_back(rng.complex_sphere(z.dim()));
  for (const CVec& u : structured) {
    const double s = dual(u);
    if (!(s > 0.0)) continue;
    acc.add([&] { return std::pair{linear(u, z) / s, linear(u, w) / s}; });
  }
}

// Dual-optimal functional for the gauge max(|x1|, |x2|) + |x3| at x.
CVec indicatrix_support(const CVec& x) {
  const auto phase = [](Complex c) {
    return std::abs(c) > 0.0 ? std::conj(c) / std::abs(c) : Complex(1.0);
  };
  if (std::abs(x[0]) >= std::abs(x[1])) return CVec{phase(x[0]), 0.0, phase(x[2])};
  return CVec{0.0, phase(x[1]), phase(x[2])};
}

std::vector<double> polar_grid(std::size_t points) {
  std::vector<double> out(points);
  for (std::size_t k = 0; k < points; ++k) {
    out[k] = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(points);
  }
  return out;
}

double excess_on(const DomainDescriptor& domain, const DiscMap& f, std::size_t points) {
  double worst = -kInf;
  for (double t : polar_grid(points)) {
    const CVec x = f(std::polar(1.0, t));
    if (!x.all_finite()) return kInf;
    worst = std::max(worst, level(domain, x) - 1.0);
  }
  return worst;
}

bool accept(const DomainDescriptor& domain, const DiscMap& f) {
  return excess_on(domain, f, kGridPoints) <= kFeasibleSlack &&
         excess_on(domain, f, kFineGridPoints) <= kFeasibleSlack;
}

DiscMap affine_disc(const CVec& z, const CVec& w, double sigma) {
  return DiscMap{{z, (w - z) * Complex(1.0 / sigma)}, {}};
}

struct Candidate {
  double sigma = kInf;
  DiscMap disc;
  std::string origin;
};

void consider(Candidate& best, double sigma, DiscMap disc, const char* origin) {
  if (sigma < best.sigma) best = Candidate{sigma, std::move(disc), origin};
}

// Smallest sigma on a bisection ladder for which the affine disc stays in the
// domain; convexity makes feasibility monotone in sigma.
void affine_seed(const DomainDescriptor& domain, const CVec& z, const CVec& w,
                 Candidate& best) {
  double hi = 1.0 - 1e-12;
  if (!accept(domain, affine_disc(z, w, hi))) return;
  double lo = 0.0;
  for (int it = 0; it < 80 && hi - lo > 1e-16; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid > 0.0 && excess_on(domain, affine_disc(z, w, mid), kGridPoints) <= kFeasibleSlack) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  DiscMap f = affine_disc(z, w, hi);
  if (accept(domain, f)) consider(best, hi, std::move(f), "affine");
}

void polydisc_seed(const CVec& z, const CVec& w, Candidate& best) {
  double sigma = 0.0;
  CVec m(z.dim());
  for (std::size_t j = 0; j < z.dim(); ++j) {
    m[j] = (w[j] - z[j]) / (1.0 - std::conj(z[j]) * w[j]);
    sigma = std::max(sigma, std::abs(m[j]));
  }
  if (!(sigma > 0.0 && sigma < 1.0)) return;
  consider(best, sigma, DiscMap{{CVec(z.dim()), m * Complex(1.0 / sigma)}, z}, "polydisc geodesic");
}

// 0 -> (a, b, ab): l -> (a l/s, b l/s, ab l^2/s^2) with s = max(|a|, |b|).
void royal_seed(const CVec& z, const CVec& w, Candidate& best) {
  if (norm(z) != 0.0) return;
  if (std::abs(w[2] - w[0] * w[1]) > 1e-14) return;
  const double sigma = std::max(std::abs(w[0]), std::abs(w[1]));
  if (!(sigma > 0.0 && sigma < 1.0)) return;
  const CVec c1{w[0] / sigma, w[1] / sigma, 0.0};
  const CVec c2{0.0, 0.0, w[0] * w[1] / (sigma * sigma)};
  consider(best, sigma, DiscMap{{CVec(3), c1, c2}, {}}, "royal disc");
}

// Polynomial disc with f(0) = z, f(sigma) = w from (log sigma, c_2, ..., c_d).
DiscMap polynomial_from(std::span<const double> x, const CVec& z, const CVec& w, int degree) {
  const double sigma = std::exp(x[0]);
  const std::size_t n = z.dim();
  DiscMap f;
  f.coefficients.assign(static_cast<std::size_t>(degree) + 1, CVec(n));
  f.coefficients[0] = z;
  CVec rest = w - z;
  std::size_t idx = 1;
  double power = sigma;
  for (int k = 2; k <= degree; ++k) {
    power *= sigma;
    CVec& c = f.coefficients[static_cast<std::size_t>(k)];
    for (std::size_t j = 0; j < n; ++j, idx += 2) c[j] = Complex(x[idx], x[idx + 1]);
    rest -= c * Complex(power);
  }
  f.coefficients[1] = rest * Complex(1.0 / sigma);
  return f;
}

}  // namespace

double moebius_distance(Complex l1, Complex l2) {
  return std::abs((l1 - l2) / (1.0 - std::conj(l2) * l1));
}

double poincare(Complex l1, Complex l2) {
  if (!(std::abs(l1) < 1.0) || !(std::abs(l2) < 1.0)) {
    throw DomainError("poincare: argument outside the unit disc",
                      std::max(std::abs(l1), std::abs(l2)));
  }
  // Canonical order makes the result bit-for-bit symmetric.
  if (lex_less(CVec{l2}, CVec{l1})) std::swap(l1, l2);
  const double den = std::abs(1.0 - std::conj(l2) * l1);
  const double d = std::abs(l1 - l2) / den;
  if (d < 0.5) return std::atanh(d);
  // 1 - d^2 = (1 - |l1|^2)(1 - |l2|^2) / |1 - conj(l2) l1|^2, free of cancellation.
  const double one_minus = (1.0 - std::norm(l1)) * (1.0 - std::norm(l2)) / (den * den);
  return std::log1p(d) - 0.5 * std::log(one_minus);
}

double carath_lower(const DomainDescriptor& domain, const CVec& z, const CVec& w,
                    int family_size) {
  validate(domain);
  const std::size_t n = dimension(domain);
  require_dim(z, n, "carath_lower");
  require_dim(w, n, "carath_lower");
  if (!contains(domain, z) || !contains(domain, w)) {
    throw DomainError("carath_lower: point outside " + name(domain),
                      std::max(level(domain, z), level(domain, w)));
  }
  if (z == w) return 0.0;
  FamilyMax acc;
  std::visit(
      [&](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, domain::Disc> || std::is_same_v<T, domain::Polydisc>) {
          for (std::size_t j = 0; j < n; ++j) acc.add([&] { return std::pair{z[j], w[j]}; });
        } else if constexpr (std::is_same_v<T, domain::Ball>) {
          // <phi_z(x), u> with u along phi_z(w) is extremal.
          const CVec mw = ball_moebius(z, w);
          std::vector<CVec> dirs{mw * Complex(1.0 / norm(mw))};
          Sampler rng(kFamilySeed);
          for (int k = 0; k < family_size; ++k) dirs.push_back(rng.complex_sphere(n));
          for (const CVec& u : dirs) {
            acc.add([&] {
              return std::pair{inner(ball_moebius(z, z), u), inner(ball_moebius(z, w), u)};
            });
          }
        } else if constexpr (std::is_same_v<T, domain::Tetrablock>) {
          tetrablock_family(acc, z, w, family_size);
        } else if constexpr (std::is_same_v<T, domain::SymBidisc>) {
          tetrablock_family(acc, CVec{0.5 * z[0], 0.5 * z[0], z[1]},
                            CVec{0.5 * w[0], 0.5 * w[0], w[1]}, family_size);
        } else if constexpr (std::is_same_v<T, domain::RIII2>) {
          tetrablock_family(acc, lambda(SymMat2::from_cvec(z)), lambda(SymMat2::from_cvec(w)),
                            family_size);
        } else if constexpr (std::is_same_v<T, domain::LieBall>) {
          linear_family(acc, z, w, family_size,
                        {conj_vec(w - z), conj_vec(w), conj_vec(z)}, lie_dual_norm);
          if (n == 2) {
            const CVec pz = phi(z), pw = phi(w);
            for (std::size_t j = 0; j < 2; ++j) acc.add([&] { return std::pair{pz[j], pw[j]}; });
          } else if (n == 3) {
            tetrablock_family(acc, lambda(psi(z)), lambda(psi(w)), family_size);
          }
        } else if constexpr (std::is_same_v<T, domain::IndicatrixE0>) {
          linear_family(acc, z, w, family_size,
                        {indicatrix_support(w - z), indicatrix_support(w), indicatrix_support(z)},
                        indicatrix_dual_norm);
        } else {
          throw SpecError("carath_lower: no function family for " + name(domain));
        }
      },
      domain);
  return acc.value();
}

CVec DiscMap::operator()(Complex l) const {
  const std::size_t n = dim();
  CVec out(n);
  for (std::size_t k = coefficients.size(); k-- > 0;) {
    for (std::size_t j = 0; j < n; ++j) out[j] = out[j] * l + coefficients[k][j];
  }
  if (!centers.empty()) {
    for (std::size_t j = 0; j < n; ++j) out[j] = moebius_shift(centers[j], out[j]);
  }
  return out;
}

bool DiscMap::is_constant() const noexcept {
  for (std::size_t k = 1; k < coefficients.size(); ++k) {
    if (norm_sq(coefficients[k]) != 0.0) return false;
  }
  return true;
}

double boundary_excess(const DomainDescriptor& domain, const DiscMap& f, std::size_t points) {
  return excess_on(domain, f, std::max<std::size_t>(points, 1));
}

LempertResult lempert_search(const DomainDescriptor& domain, const CVec& z, const CVec& w,
                             int degree, std::size_t budget) {
  validate(domain);
  const std::size_t n = dimension(domain);
  require_dim(z, n, "lempert_upper");
  require_dim(w, n, "lempert_upper");
  if (degree < 1) throw SpecError("lempert_upper: degree must be >= 1");
  if (!contains(domain, z) || !contains(domain, w)) {
    throw DomainError("lempert_upper: point outside " + name(domain),
                      std::max(level(domain, z), level(domain, w)));
  }
  LempertResult result;
  if (z == w) {
    result.feasible = true;
    result.disc = DiscMap{{z}, {}};
    result.diagnostics = "constant disc";
    return result;
  }

  Candidate best;
  affine_seed(domain, z, w, best);
  if (std::holds_alternative<domain::Polydisc>(domain) ||
      std::holds_alternative<domain::Disc>(domain)) {
    polydisc_seed(z, w, best);
  }
  if (std::holds_alternative<domain::Tetrablock>(domain)) royal_seed(z, w, best);

  // Penalised search over polynomial discs. Every evaluation that passes the
  // grid test is a candidate, so a longer run can only improve the result.
  std::size_t evals = 0;
  double weight = 10.0;
  auto objective = [&](std::span<const double> x) {
    const double sigma = std::exp(x[0]);
    if (!(sigma > 0.0 && sigma < 1.0)) return kInf;
    DiscMap f = polynomial_from(x, z, w, degree);
    const double excess = excess_on(domain, f, kGridPoints);
    if (excess <= kFeasibleSlack && sigma < best.sigma && accept(domain, f)) {
      consider(best, sigma, std::move(f), "simplex search");
    }
    return x[0] + weight * std::max(excess, 0.0);
  };
  std::vector<double> x(1 + 2 * n * static_cast<std::size_t>(degree - 1), 0.0);
  x[0] = std::log(std::min(best.sigma, 0.99));
  if (best.origin != "affine" && best.sigma < 1.0) {
    // Start from the affine direction at the best known sigma.
    x[0] = std::log(std::min(1.0 - 1e-9, best.sigma * 1.05));
  }
  double last_value = kInf;
  int stalls = 0;
  while (evals < budget && stalls < 2) {
    NelderMeadOptions opts;
    opts.max_evaluations = std::min<std::size_t>(1500, budget - evals);
    opts.initial_step = 0.25;
    const NelderMeadResult r = nelder_mead(objective, x, opts);
    evals += r.evaluations;
    stalls = (r.converged && r.value >= last_value - 1e-15) ? stalls + 1 : 0;
    last_value = std::min(last_value, r.value);
    x = r.x;
    weight = std::min(weight * 10.0, 1e8);
  }

  result.evaluations = evals;
  if (best.sigma < 1.0) {
    result.feasible = true;
    result.sigma = best.sigma;
    result.value = std::atanh(best.sigma);
    result.disc = std::move(best.disc);
    result.diagnostics = "best disc: " + best.origin;
  } else {
    result.value = kInf;
    result.diagnostics = "no disc passed the boundary test within " + std::to_string(evals) +
                         " evaluations";
  }
  return result;
}

double lempert_upper(const DomainDescriptor& domain, const CVec& z, const CVec& w, int degree,
                     std::size_t budget) {
  return lempert_search(domain, z, w, degree, budget).value;
}

BoundPair sandwich(const DomainDescriptor& domain, const CVec& z, const CVec& w, int degree,
                   std::size_t budget, int family_size) {
  BoundPair b;
  b.lower = carath_lower(domain, z, w, family_size);
  b.upper = lempert_upper(domain, z, w, degree, budget);
  b.gap = b.upper - b.lower;
  return b;
}

BidiscGeodesic bidisc_geodesic(const CVec& z, const CVec& w) {
  require_dim(z, 2, "bidisc_geodesic");
  require_dim(w, 2, "bidisc_geodesic");
  if (!in_polydisc(z, 2) || !in_polydisc(w, 2)) {
    throw DomainError("bidisc_geodesic: point outside the bidisc", std::max(max_abs(z), max_abs(w)));
  }
  if (z == w) throw SpecError("bidisc_geodesic: needs distinct points");
  CVec m(2);
  double d[2];
  for (std::size_t j = 0; j < 2; ++j) {
    m[j] = (w[j] - z[j]) / (1.0 - std::conj(z[j]) * w[j]);
    d[j] = std::abs(m[j]);
  }
  BidiscGeodesic g;
  g.sigma = std::max(d[0], d[1]);
  g.left_inverse_coordinate = d[1] > d[0] ? 1 : 0;
  g.unique_left_inverse = std::abs(d[0] - d[1]) > 1e-12 * g.sigma;
  g.f = DiscMap{{CVec(2), m * Complex(1.0 / g.sigma)}, z};
  return g;
}

VerificationReport pushforward_geodesic_check(const RetractionSpec& spec, const DiscMap& f,
                                              const std::vector<std::pair<Complex, Complex>>& pairs,
                                              double tol, int family_size) {
  const Retraction retr(spec);
  const DomainDescriptor& domain = retr.domain();
  ViolationMax certificate, pushed;
  if (!f.is_constant()) {
    for (const auto& [l1, l2] : pairs) {
      const CVec witness{l1, l2};
      const auto gap = [&](const CVec& a, const CVec& b) {
        try {
          return std::max(0.0, poincare(l1, l2) - carath_lower(domain, a, b, family_size));
        } catch (const Error&) {
          return kInf;
        }
      };
      double cert = kInf;
      double push = kInf;
      try {
        const CVec a = f(l1), b = f(l2);
        cert = gap(a, b);
        push = gap(retr(a), retr(b));
      } catch (const Error&) {
      }
      certificate.add(cert, witness);
      pushed.add(push, witness);
    }
  }
  VerificationReport report;
  report.checks.push_back(certificate.finish("geodesic certificate", tol));
  report.checks.push_back(pushed.finish("pushforward geodesic", tol));
  return report;
}

}  // namespace lretract
