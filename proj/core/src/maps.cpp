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

#include "lretract/maps.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "lretract/domains.hpp"
#include "lretract/errors.hpp"

namespace lretract {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

constexpr double kBranchGuard = 1e-10;
constexpr double kDenominatorGuard = 1e-14;

void admit(const DomainDescriptor& d, const CVec& z, Admission mode,
           const char* what) {
  const bool ok = mode == Admission::kStrict ? contains(d, z) : in_closure(d, z);
  if (!ok) {
    const double lv = level(d, z);
    throw DomainError(std::string(what) + ": point outside " + name(d) +
                          " (level " + std::to_string(lv) + ")",
                      lv);
  }
}

// Distance from the origin to the segment [a, b] in the complex plane.
double origin_distance_to_segment(Complex a, Complex b) {
  const Complex d = b - a;
  const double len2 = std::norm(d);
  if (len2 == 0.0) return std::abs(a);
  double s = -(a.real() * d.real() + a.imag() * d.imag()) / len2;
  s = std::clamp(s, 0.0, 1.0);
  return std::abs(a + s * d);
}

}  // namespace

CVec phi(const CVec& z, Admission mode) {
  require_dim(z, 2, "phi");
  admit(domain::LieBall{2}, z, mode, "phi");
  return CVec{z[0] + kI * z[1], -z[0] + kI * z[1]};
}

CVec phi_inv(const CVec& w, Admission mode) {
  require_dim(w, 2, "phi_inv");
  admit(domain::Polydisc{2}, w, mode, "phi_inv");
  return CVec{0.5 * (w[0] - w[1]), -0.5 * kI * (w[0] + w[1])};
}

SymMat2 psi(const CVec& z, Admission mode) {
  require_dim(z, 3, "psi");
  admit(domain::LieBall{3}, z, mode, "psi");
  return SymMat2{z[0] + kI * z[1], z[2], -z[0] + kI * z[1]};
}

CVec psi_inv(const SymMat2& a, Admission mode) {
  admit(domain::RIII2{}, a.to_cvec(), mode, "psi_inv");
  return CVec{0.5 * (a.a11 - a.a22), -0.5 * kI * (a.a11 + a.a22), a.a12};
}

CVec lambda(const SymMat2& a) { return CVec{a.a11, a.a22, a.det()}; }

FiberResult lambda_fiber(const CVec& x, Admission mode) {
  require_dim(x, 3, "lambda_fiber");
  admit(domain::Tetrablock{}, x, mode, "lambda_fiber");
  const Complex g = x[0] * x[1] - x[2];
  if (g == Complex(0.0)) {
    return FiberResult{{SymMat2{x[0], 0.0, x[1]}}, 1};
  }
  const Complex r = std::sqrt(g);
  return FiberResult{{SymMat2{x[0], r, x[1]}, SymMat2{x[0], -r, x[1]}}, 2};
}

Complex lambda_jacobian_det(const SymMat2& a) {
  // Rows: d(a11), d(a22), d(a11 a22 - a12^2) w.r.t. (a11, a22, a12).
  const std::array<std::array<Complex, 3>, 3> j{{
      {1.0, 0.0, 0.0},
      {0.0, 1.0, 0.0},
      {a.a22, a.a11, -2.0 * a.a12},
  }};
  return j[0][0] * (j[1][1] * j[2][2] - j[1][2] * j[2][1]) -
         j[0][1] * (j[1][0] * j[2][2] - j[1][2] * j[2][0]) +
         j[0][2] * (j[1][0] * j[2][1] - j[1][1] * j[2][0]);
}

bool is_critical_lambda(const SymMat2& a) { return a.a12 == Complex(0.0); }

Mat2 Mat2::inverse(double guard) const {
  const Complex d = det();
  if (std::abs(d) < guard) {
    throw SingularError("Mat2::inverse: |det| = " + std::to_string(std::abs(d)));
  }
  return Mat2{m11 / d, -m01 / d, -m10 / d, m00 / d};
}

Mat2 operator*(const Mat2& a, const Mat2& b) noexcept {
  return Mat2{a.m00 * b.m00 + a.m01 * b.m10, a.m00 * b.m01 + a.m01 * b.m11,
              a.m10 * b.m00 + a.m11 * b.m10, a.m10 * b.m01 + a.m11 * b.m11};
}

Mat2 aut_rIII2_matrix(Complex lam, const SymMat2& a) {
  const Mat2 m = Mat2::from(a);
  const Complex lc = std::conj(lam);
  const Mat2 shifted{m.m00, m.m01 - lam, m.m10 - lam, m.m11};
  const Mat2 denom{1.0 - lc * m.m10, -lc * m.m11, -lc * m.m00, 1.0 - lc * m.m01};
  return shifted * denom.inverse(kDenominatorGuard);
}

SymMat2 aut_rIII2(Complex lam, const SymMat2& a) {
  if (!(std::abs(lam) < 1.0)) throw SpecError("aut_rIII2: |lambda| must be < 1");
  admit(domain::RIII2{}, a.to_cvec(), Admission::kStrict, "aut_rIII2");
  const Mat2 p = aut_rIII2_matrix(lam, a);
  return SymMat2{p.m00, 0.5 * (p.m01 + p.m10), p.m11};
}

Complex psi_omega(Complex omega, const CVec& z) {
  require_dim(z, 3, "psi_omega");
  if (std::abs(std::abs(omega) - 1.0) > 1e-12) {
    throw SpecError("psi_omega: omega must be unimodular");
  }
  const Complex den = omega * z[0] - 1.0;
  if (std::abs(den) < kDenominatorGuard) {
    throw DomainError("psi_omega: vanishing denominator", std::abs(z[0]));
  }
  return (omega * z[2] - z[1]) / den;
}

std::pair<Complex, Complex> symmetrization(Complex z, Complex w) {
  return {z + w, z * w};
}

CVec ellipsoid_power(const CVec& z, std::span<const int> p) {
  require_dim(z, p.size(), "ellipsoid_power");
  CVec out(z.dim());
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] < 1) throw SpecError("ellipsoid_power: exponents must be positive");
    Complex acc = 1.0;
    for (int k = 0; k < p[i]; ++k) acc *= z[i];
    out[i] = acc;
  }
  return out;
}

void validate_root_basepoint(const RootBasepoint& bp, std::span<const int> p) {
  require_dim(bp.base, p.size(), "root basepoint");
  require_dim(bp.root, p.size(), "root basepoint");
  const CVec image = ellipsoid_power(bp.root, p);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (std::abs(image[i] - bp.base[i]) > 1e-12 * std::max(1.0, std::abs(bp.base[i]))) {
      throw SpecError("root basepoint: root^p does not reproduce the base point");
    }
  }
}

CVec ellipsoid_root_along(std::span<const CVec> waypoints,
                          std::span<const int> p, const RootBasepoint& bp) {
  validate_root_basepoint(bp, p);
  CVec from = bp.base;
  CVec root = bp.root;
  for (const CVec& to : waypoints) {
    require_dim(to, p.size(), "ellipsoid_root");
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p[i] == 1) {
        root[i] = to[i];
        continue;
      }
      if (origin_distance_to_segment(from[i], to[i]) < kBranchGuard) {
        throw BranchAmbiguityError("ellipsoid_root: path meets the branch locus in coordinate " +
                                   std::to_string(i));
      }
      // A segment avoiding 0 turns by less than pi about it, so the
      // principal logarithm of the endpoint ratio is the continued one.
      root[i] *= std::exp(std::log(to[i] / from[i]) / static_cast<double>(p[i]));
    }
    from = to;
  }
  return root;
}

CVec ellipsoid_root(const CVec& x, std::span<const int> p,
                    const RootBasepoint& bp) {
  return ellipsoid_root_along(std::span<const CVec>(&x, 1), p, bp);
}

CVec ball_moebius(const CVec& a, const CVec& z) {
  require_dim(z, a.dim(), "ball_moebius");
  const int n = static_cast<int>(a.dim());
  admit(domain::Ball{n}, a, Admission::kStrict, "ball_moebius (centre)");
  admit(domain::Ball{n}, z, Admission::kStrict, "ball_moebius");
  const double a2 = norm_sq(a);
  if (a2 == 0.0) return z * Complex(-1.0);
  const Complex za = inner(z, a);
  const CVec pz = a * (za / a2);
  const CVec qz = z - pz;
  const double sa = std::sqrt(1.0 - a2);
  return (a - pz - qz * Complex(sa)) * (1.0 / (1.0 - za));
}

LambdaSheet::LambdaSheet(const SymMat2& basepoint)
    : base_(basepoint), base_x_(lambda(basepoint)) {
  if (std::abs(basepoint.a12) < kBranchGuard) {
    throw SpecError("LambdaSheet: basepoint lies on the critical set of Lambda");
  }
}

LambdaSheet::Key LambdaSheet::key_of(const CVec& x) noexcept {
  Key k{};
  for (std::size_t i = 0; i < 3; ++i) {
    k[2 * i] = std::bit_cast<std::uint64_t>(x[i].real());
    k[2 * i + 1] = std::bit_cast<std::uint64_t>(x[i].imag());
  }
  return k;
}

Complex LambdaSheet::continue_root(const CVec& x) const {
  const CVec dir = x - base_x_;
  auto g_at = [&](double s) {
    const CVec y = base_x_ + dir * Complex(s);
    return y[0] * y[1] - y[2];
  };
  Complex root = base_.a12;
  double s = 0.0;
  double step = 1.0 / 64.0;
  while (s < 1.0) {
    const double next = std::min(1.0, s + step);
    const Complex g = g_at(next);
    if (std::abs(g) < kBranchGuard * kBranchGuard) {
      throw BranchAmbiguityError("LambdaSheet: path meets the royal variety");
    }
    const Complex r = std::sqrt(g);
    const Complex cand = std::abs(r - root) <= std::abs(r + root) ? r : -r;
    // Accept only steps where the chosen root is unambiguously the nearer
    // one; otherwise refine.
    if (std::abs(cand - root) > 0.5 * std::abs(cand)) {
      step *= 0.5;
      if (step < 1e-12) {
        throw BranchAmbiguityError("LambdaSheet: path passes too close to the royal variety");
      }
      continue;
    }
    root = cand;
    s = next;
    step = std::min(1.0 / 64.0, step * 2.0);
  }
  return root;
}

SymMat2 LambdaSheet::lift(const CVec& x) const {
  require_dim(x, 3, "LambdaSheet::lift");
  const Key key = key_of(x);
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (auto it = cache_.find(key); it != cache_.end()) {
      return SymMat2{x[0], it->second, x[1]};
    }
  }
  const Complex root = continue_root(x);
  {
    std::lock_guard<std::mutex> lock(mu_);
    cache_.emplace(key, root);
  }
  return SymMat2{x[0], root, x[1]};
}

std::size_t LambdaSheet::cache_size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return cache_.size();
}

void validate(const MapDescriptor& m) {
  std::visit(Overloaded{
                 [](const map::EllipsoidPower& e) {
                   for (int pj : e.p) {
                     if (pj < 1) throw SpecError("EllipsoidPower: exponents must be positive");
                   }
                 },
                 [](const map::EllipsoidRoot& e) {
                   for (int pj : e.p) {
                     if (pj < 1) throw SpecError("EllipsoidRoot: exponents must be positive");
                   }
                   validate_root_basepoint(e.basepoint, e.p);
                 },
                 [](const map::AutRIII2& a) {
                   if (!(std::abs(a.lam) < 1.0)) throw SpecError("AutRIII2: |lambda| must be < 1");
                 },
                 [](const map::LeftInversePsiOmega& l) {
                   if (std::abs(std::abs(l.omega) - 1.0) > 1e-12) {
                     throw SpecError("LeftInversePsiOmega: |omega| must be 1");
                   }
                 },
                 [](const map::BallMoebius& b) {
                   if (!(norm_sq(b.a) < 1.0)) throw SpecError("BallMoebius: a must lie in the ball");
                 },
                 [](const auto&) {},
             },
             m);
}

CVec apply(const MapDescriptor& m, const CVec& z) {
  validate(m);
  return std::visit(
      Overloaded{
          [&](const map::PhiL2ToBidisc&) { return phi(z); },
          [&](const map::PsiL3ToRIII2&) { return psi(z).to_cvec(); },
          [&](const map::LambdaToE&) { return lambda(SymMat2::from_cvec(z)); },
          [&](const map::Symmetrization&) {
            require_dim(z, 2, "symmetrization");
            auto [s, p] = symmetrization(z[0], z[1]);
            return CVec{s, p};
          },
          [&](const map::EllipsoidPower& e) { return ellipsoid_power(z, e.p); },
          [&](const map::EllipsoidRoot& e) { return ellipsoid_root(z, e.p, e.basepoint); },
          [&](const map::AutRIII2& a) {
            return aut_rIII2(a.lam, SymMat2::from_cvec(z)).to_cvec();
          },
          [&](const map::LeftInversePsiOmega& l) { return CVec{psi_omega(l.omega, z)}; },
          [&](const map::BallMoebius& b) { return ball_moebius(b.a, z); },
      },
      m);
}

}  // namespace lretract
