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

#include "lretract/domains.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>

#include "lretract/errors.hpp"
#include "lretract/sampling.hpp"

namespace lretract {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::size_t checked_dim(int n, const char* what) {
  if (n < 1) throw SpecError(std::string(what) + ": dimension must be >= 1");
  return static_cast<std::size_t>(n);
}

double polydisc_level(const CVec& z) { return max_abs(z); }

// Radius law for the generic samplers: concentrates mass towards the
// boundary so that verification exercises near-boundary behaviour.
double radial(Sampler& rng, std::size_t real_dim) {
  return std::pow(rng.uniform(), 1.0 / static_cast<double>(real_dim));
}

SymMat2 sample_rIII2(Sampler& rng) {
  SymMat2 a{rng.complex_normal(), rng.complex_normal() * (1.0 / std::sqrt(2.0)),
            rng.complex_normal()};
  const double s = a.sigma_max();
  const double r = radial(rng, 6) / s;
  return SymMat2{a.a11 * r, a.a12 * r, a.a22 * r};
}

}  // namespace

void validate(const DomainDescriptor& d) {
  std::visit(Overloaded{
                 [](const domain::Polydisc& p) { checked_dim(p.n, "polydisc"); },
                 [](const domain::Ball& b) { checked_dim(b.n, "ball"); },
                 [](const domain::LieBall& l) { checked_dim(l.n, "lie ball"); },
                 [](const domain::Ellipsoid& e) {
                   if (e.p.empty()) throw SpecError("ellipsoid: empty exponent list");
                   bool some_ge2 = false;
                   for (int pj : e.p) {
                     if (pj < 1) throw SpecError("ellipsoid: exponents must be positive");
                     some_ge2 = some_ge2 || pj >= 2;
                   }
                   if (!some_ge2) {
                     throw SpecError("ellipsoid: at least one exponent must be >= 2");
                   }
                 },
                 [](const auto&) {},
             },
             d);
}

std::size_t dimension(const DomainDescriptor& d) {
  return std::visit(
      Overloaded{
          [](const domain::Disc&) -> std::size_t { return 1; },
          [](const domain::Polydisc& p) { return checked_dim(p.n, "polydisc"); },
          [](const domain::Ball& b) { return checked_dim(b.n, "ball"); },
          [](const domain::LieBall& l) { return checked_dim(l.n, "lie ball"); },
          [](const domain::RIII2&) -> std::size_t { return 3; },
          [](const domain::Tetrablock&) -> std::size_t { return 3; },
          [](const domain::SymBidisc&) -> std::size_t { return 2; },
          [](const domain::Ellipsoid& e) { return e.p.size(); },
          [](const domain::IndicatrixE0&) -> std::size_t { return 3; },
      },
      d);
}

std::string name(const DomainDescriptor& d) {
  return std::visit(
      Overloaded{
          [](const domain::Disc&) { return std::string("disc"); },
          [](const domain::Polydisc& p) { return "polydisc:" + std::to_string(p.n); },
          [](const domain::Ball& b) { return "ball:" + std::to_string(b.n); },
          [](const domain::LieBall& l) { return "lie:" + std::to_string(l.n); },
          [](const domain::RIII2&) { return std::string("rIII2"); },
          [](const domain::Tetrablock&) { return std::string("tetrablock"); },
          [](const domain::SymBidisc&) { return std::string("symbidisc"); },
          [](const domain::Ellipsoid& e) {
            std::string s = "ellipsoid:";
            for (std::size_t i = 0; i < e.p.size(); ++i) {
              if (i) s += ',';
              s += std::to_string(e.p[i]);
            }
            return s;
          },
          [](const domain::IndicatrixE0&) { return std::string("indicatrix"); },
      },
      d);
}

namespace {

int parse_positive(std::string_view text, std::string_view what) {
  int value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || value < 1) {
    throw SpecError("domain: bad " + std::string(what) + " '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

DomainDescriptor parse_domain(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view head = text.substr(0, colon);
  const std::string_view tail =
      colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  const bool has_arg = colon != std::string_view::npos;
  DomainDescriptor d;
  if (head == "disc" && !has_arg) {
    d = domain::Disc{};
  } else if (head == "polydisc" && has_arg) {
    d = domain::Polydisc{parse_positive(tail, "dimension")};
  } else if (head == "ball" && has_arg) {
    d = domain::Ball{parse_positive(tail, "dimension")};
  } else if (head == "lie" && has_arg) {
    d = domain::LieBall{parse_positive(tail, "dimension")};
  } else if (head == "rIII2" && !has_arg) {
    d = domain::RIII2{};
  } else if (head == "tetrablock" && !has_arg) {
    d = domain::Tetrablock{};
  } else if (head == "symbidisc" && !has_arg) {
    d = domain::SymBidisc{};
  } else if (head == "indicatrix" && !has_arg) {
    d = domain::IndicatrixE0{};
  } else if (head == "ellipsoid" && has_arg) {
    domain::Ellipsoid e;
    std::size_t start = 0;
    while (true) {
      const auto comma = tail.find(',', start);
      e.p.push_back(parse_positive(tail.substr(start, comma - start), "exponent"));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    d = e;
  } else {
    throw SpecError("domain: unknown domain '" + std::string(text) + "'");
  }
  validate(d);
  return d;
}

double level(const DomainDescriptor& d, const CVec& z) {
  require_dim(z, dimension(d), name(d));
  return std::visit(
      Overloaded{
          [&](const domain::Disc&) { return std::abs(z[0]); },
          [&](const domain::Polydisc&) { return polydisc_level(z); },
          [&](const domain::Ball&) { return norm(z); },
          [&](const domain::LieBall&) { return lie_norm(z); },
          [&](const domain::RIII2&) { return SymMat2::from_cvec(z).sigma_max(); },
          [&](const domain::Tetrablock&) { return tetrablock_level(z); },
          [&](const domain::SymBidisc&) { return sym_bidisc_level(z[0], z[1]); },
          [&](const domain::Ellipsoid& e) { return ellipsoid_level(z, e.p); },
          [&](const domain::IndicatrixE0&) { return gauge_indicatrix_E0(z); },
      },
      d);
}

bool contains(const DomainDescriptor& d, const CVec& z) {
  if (const auto* l = std::get_if<domain::LieBall>(&d)) {
    return in_lie_ball(z, l->n);
  }
  return level(d, z) < 1.0;
}

bool in_closure(const DomainDescriptor& d, const CVec& z, double tol) {
  return level(d, z) <= 1.0 + tol;
}

std::vector<CVec> sample(const DomainDescriptor& d, std::size_t count,
                         std::uint64_t seed) {
  validate(d);
  Sampler rng(seed);
  const std::size_t n = dimension(d);
  std::vector<CVec> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    CVec z = std::visit(
        Overloaded{
            [&](const domain::Disc&) { return CVec{rng.disc()}; },
            [&](const domain::Polydisc&) {
              CVec v(n);
              for (std::size_t i = 0; i < n; ++i) v[i] = rng.disc();
              return v;
            },
            [&](const domain::Ball&) { return rng.ball(n); },
            [&](const domain::LieBall&) {
              // Every fourth point heads towards the Shilov boundary.
              CVec dir = (k % 4 == 3) ? rng.real_sphere(n) * rng.unimodular()
                                      : rng.complex_sphere(n);
              return dir * Complex(radial(rng, 2 * n) / lie_norm(dir));
            },
            [&](const domain::RIII2&) { return sample_rIII2(rng).to_cvec(); },
            [&](const domain::Tetrablock&) {
              if (k % 8 == 7) {
                const Complex a = rng.disc();
                const Complex b = rng.disc();
                return CVec{a, b, a * b};
              }
              const SymMat2 a = sample_rIII2(rng);
              return CVec{a.a11, a.a22, a.det()};
            },
            [&](const domain::SymBidisc&) {
              const Complex a = rng.disc();
              const Complex b = rng.disc();
              return CVec{a + b, a * b};
            },
            [&](const domain::Ellipsoid& e) {
              const CVec w = rng.ball(n);
              CVec v(n);
              for (std::size_t i = 0; i < n; ++i) {
                const double p = e.p[i];
                const double branch = static_cast<double>(
                    rng.index(static_cast<std::uint64_t>(e.p[i])));
                const double arg = (std::arg(w[i]) + 2.0 * std::numbers::pi * branch) / p;
                v[i] = std::polar(std::pow(std::abs(w[i]), 1.0 / p), arg);
              }
              return v;
            },
            [&](const domain::IndicatrixE0&) {
              CVec dir = rng.complex_sphere(3);
              return dir * Complex(radial(rng, 6) / gauge_indicatrix_E0(dir));
            },
        },
        d);
    out.push_back(std::move(z));
  }
  return out;
}

double lie_defining_value(const CVec& z) {
  return 2.0 * norm_sq(z) - std::norm(bullet(z, z));
}

double lie_norm(const CVec& z) {
  // ||z||^4 - |z.z|^2 = 4 sum_{i<j} (x_i y_j - x_j y_i)^2 for z = x + iy.
  // The right side has no cancellation, which matters near real points.
  double g = 0.0;
  for (std::size_t i = 0; i < z.dim(); ++i) {
    for (std::size_t j = i + 1; j < z.dim(); ++j) {
      const double m = z[i].real() * z[j].imag() - z[j].real() * z[i].imag();
      g += m * m;
    }
  }
  return std::sqrt(norm_sq(z) + 2.0 * std::sqrt(g));
}

// Equivalent to ||z|| < 1 and 2||z||^2 - |z.z|^2 < 1, evaluated stably.
bool in_lie_ball(const CVec& z, int n) {
  require_dim(z, checked_dim(n, "lie ball"), "in_lie_ball");
  return lie_norm(z) < 1.0;
}

std::vector<BoundarySample> sample_shilov_lie(int n, std::size_t count,
                                              std::uint64_t seed) {
  const std::size_t dim = checked_dim(n, "sample_shilov_lie");
  if (count < 1) throw SpecError("sample_shilov_lie: count must be >= 1");
  Sampler rng(seed);
  std::vector<BoundarySample> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const Complex omega = rng.unimodular();
    out.push_back({rng.real_sphere(dim) * omega, BoundarySample::Stratum::kShilov});
  }
  return out;
}

bool in_rIII2(const SymMat2& a) { return a.sigma_max() < 1.0; }

SymMat2 tetrablock_fiber_matrix(const CVec& x) {
  require_dim(x, 3, "tetrablock");
  return SymMat2{x[0], std::sqrt(x[0] * x[1] - x[2]), x[1]};
}

double tetrablock_level(const CVec& x) {
  return tetrablock_fiber_matrix(x).sigma_max();
}

bool in_tetrablock(const CVec& x) { return in_rIII2(tetrablock_fiber_matrix(x)); }

double sym_bidisc_level(Complex s, Complex p) {
  const Complex root_disc = std::sqrt(s * s - 4.0 * p);
  const Complex plus = s + root_disc;
  const Complex minus = s - root_disc;
  const Complex big = 0.5 * (std::abs(plus) >= std::abs(minus) ? plus : minus);
  const double big_abs = std::abs(big);
  if (big_abs == 0.0) return 0.0;
  return std::max(big_abs, std::abs(p / big));
}

bool in_sym_bidisc(Complex s, Complex p) { return sym_bidisc_level(s, p) < 1.0; }

double ellipsoid_level(const CVec& z, std::span<const int> p) {
  require_dim(z, p.size(), "ellipsoid");
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    acc += std::pow(std::norm(z[i]), p[i]);
  }
  return acc;
}

bool in_ellipsoid(const CVec& z, std::span<const int> p) {
  return ellipsoid_level(z, p) < 1.0;
}

double gauge_indicatrix_E0(const CVec& z) {
  require_dim(z, 3, "indicatrix");
  const double a3 = std::abs(z[2]);
  return std::max(std::abs(z[0]) + a3, std::abs(z[1]) + a3);
}

bool in_disc(Complex z) { return std::abs(z) < 1.0; }

bool in_polydisc(const CVec& z, int n) {
  require_dim(z, checked_dim(n, "polydisc"), "in_polydisc");
  return polydisc_level(z) < 1.0;
}

bool in_ball(const CVec& z, int n) {
  require_dim(z, checked_dim(n, "ball"), "in_ball");
  return norm_sq(z) < 1.0;
}

}  // namespace lretract
