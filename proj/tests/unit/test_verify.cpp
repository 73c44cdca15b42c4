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

#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "lretract/errors.hpp"
#include "lretract/sampling.hpp"
#include "lretract/verify.hpp"
#include "oracles.hpp"

using namespace lretract;

namespace {

LinearMap3 rt_matrix(double t) {
  LinearMap3 m;
  m.m = {1.0, 0.0, 0.0, t, 0.0, 0.0, 0.0, 0.0, 1.0};
  return m;
}

// Idempotent map with range span{u, v} and kernel spanned by k.
LinearMap3 projection(const CVec& u, const CVec& v, const CVec& k) {
  Eigen::Matrix3cd b;
  for (int i = 0; i < 3; ++i) {
    b(i, 0) = u[i];
    b(i, 1) = v[i];
    b(i, 2) = k[i];
  }
  const Eigen::Matrix3cd d = Eigen::Vector3cd(1.0, 1.0, 0.0).asDiagonal();
  const Eigen::Matrix3cd p = b * d * b.inverse();
  LinearMap3 m;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) m.m[3 * i + j] = p(i, j);
  }
  return m;
}

}  // namespace

TEST_SUITE("verify") {
  TEST_CASE("scalar inequality of the indicatrix lemma") {
    CHECK(lemma41_check(0.5, 0.0).max_violation <= 1e-9);
    const Lemma41Result rot = lemma41_check(kI, 0.0);
    CHECK(rot.max_violation >= std::sqrt(5.0) - 1.0 - 1e-12);
    CHECK(std::abs(std::abs(rot.witness) - 1.0) < 1e-12);
    const Lemma41Result beta = lemma41_check(0.5, 0.1);
    CHECK(beta.max_violation > 1e-3);
    CHECK(beta.max_violation < 0.1);
    CHECK(std::abs(std::abs(beta.witness) - 1.0) < 1e-12);
    CHECK(std::abs(std::arg(beta.witness)) < 1.0);
    CHECK_THROWS_AS(lemma41_check(0.5, 0.0, 32), SpecError);
  }

  TEST_CASE("the inequality holds exactly on the segment") {
    for (int k = 0; k <= 100; ++k) {
      CHECK(lemma41_check(k / 100.0, 0.0).max_violation <= 1e-9);
    }
  }

  TEST_CASE("the inequality fails off the segment") {
    Sampler rng(61);
    int n = 0;
    while (n < 100) {
      const Complex a = rng.disc(3.0);
      const double dist = a.real() < 0 ? std::abs(a)
                          : a.real() > 1 ? std::abs(a - 1.0)
                                         : std::abs(a.imag());
      if (dist < 0.05) continue;
      ++n;
      CHECK(lemma41_check(a, 0.0).max_violation > 1e-3);
    }
  }

  TEST_CASE("obstruction in the three dimensional Lie ball") {
    CHECK(l3_obstruction(0.0, std::sqrt(0.5)) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(std::abs(l3_obstruction(0.999999, 0.5)) < 1e-11);
    CHECK(std::abs(l3_obstruction(0.3, 1e-7)) < 1e-12);
    CHECK(std::abs(l3_obstruction(0.3, 1.0 - 1e-12)) < 1e-10);
    double closed = 0.0, route = 0.0;
    for (int i = 0; i < 50; ++i) {
      for (int j = 0; j < 50; ++j) {
        const double r = 0.05 + 0.9 * j / 49.0;
        const Complex a = std::polar(0.95 * i / 49.0, 0.37 * i + 1.1 * j);
        const double v = l3_obstruction(a, r);
        const double ma = std::abs(a);
        closed = std::max(closed, std::abs(v - r * r * (1 - r * r) * (1 - ma) * (1 - ma)));
        route = std::max(route, std::abs(v - oracle::l3_obstruction(a, r)));
        CHECK(v > 0.0);
      }
    }
    CHECK(closed <= 1e-12);
    CHECK(route <= 1e-12);
    CHECK_THROWS_AS(l3_obstruction(1.0, 0.5), SpecError);
    CHECK_THROWS_AS(l3_obstruction(0.5, 0.0), SpecError);
    CHECK_THROWS_AS(l3_obstruction(0.5, 1.0), SpecError);
  }

  TEST_CASE("gauge operator norm") {
    CHECK(gauge_operator_norm(identity_map3()) == doctest::Approx(1.0).epsilon(1e-15));
    for (double t : {0.0, 0.3, 1.0}) {
      CHECK(gauge_operator_norm(rt_matrix(t)) == doctest::Approx(1.0).epsilon(1e-15));
    }
    const LinearMap3 p = projection(CVec{1.0, 0.0, 0.0}, CVec{0.0, 1.0, 1.0}, CVec{0.0, 0.0, 1.0});
    CHECK(gauge_operator_norm(p) > 1.0);
    CHECK(gauge_operator_norm(p) == doctest::Approx(oracle::gauge_operator_norm(p)).epsilon(1e-9));

    Sampler rng(62);
    for (int k = 0; k < 30; ++k) {
      LinearMap3 m;
      for (auto& c : m.m) c = rng.complex_normal();
      const double ref = oracle::gauge_operator_norm(m);
      const double coarse = gauge_operator_norm(m, 256, 0, 5);
      const double fine = gauge_operator_norm(m, 256, 20, 5);
      CHECK(coarse <= fine);
      CHECK(fine <= ref * (1 + 1e-9));
      CHECK(fine >= ref * (1 - 1e-6));
    }
  }

  TEST_CASE("planes and their normals") {
    const PlaneSpec flat{CVec{1.0, 0.0, 0.0}, CVec{0.0, 1.0, 0.0}};
    CHECK(lemma_linret_admissible(flat));
    const CVec n = plane_normal(flat);
    CHECK(std::abs(std::abs(n[2]) - 1.0) < 1e-15);
    const PlaneSpec rt{CVec{0.0, 0.0, 1.0}, CVec{1.0, Complex(0.3, 0.4), 0.0}};
    CHECK(lemma_linret_admissible(rt));
    CHECK_FALSE(lemma_linret_admissible({CVec{1.0, 0.0, 0.0}, CVec{0.0, 1.0, 1.0}}));
    for (const PlaneSpec& p : {flat, rt}) {
      const CVec nn = plane_normal(p);
      CHECK(std::abs(inner(p.u, nn)) < 1e-15);
      CHECK(std::abs(inner(p.v, nn)) < 1e-15);
      CHECK(std::abs(norm(nn) - 1.0) < 1e-15);
    }
    CHECK_THROWS_AS(validate(PlaneSpec{CVec{1.0, 2.0, 0.0}, CVec{2.0, 4.0, 0.0}}), SpecError);
    CHECK_THROWS_AS(validate(PlaneSpec{CVec{1.0, 2.0}, CVec{2.0, 4.0, 0.0}}), DimensionError);
  }

  TEST_CASE("linear retract classifier") {
    const PlaneSpec admissible[] = {
        {CVec{1.0, 0.0, 0.0}, CVec{0.0, 1.0, 0.0}},
        {CVec{0.0, 0.0, 1.0}, CVec{1.0, 0.5, 0.0}},
        {CVec{0.0, 0.0, 1.0}, CVec{1.0, std::polar(1.0, 1.0), 0.0}},
    };
    for (const auto& p : admissible) {
      const FeasibilityResult r = linear_retract_feasibility(p);
      CHECK(r.feasible());
      CHECK(r.norm <= 1.0 + 1e-6);
      CHECK(r.evaluations <= 20000);
      CHECK(oracle::gauge_operator_norm(r.best) <= 1.0 + 1e-6);
      // The witness is a projection onto the plane.
      for (const CVec& v : {p.u, p.v}) CHECK(distance(apply(r.best, v), v) < 1e-9);
    }
    const FeasibilityResult bad =
        linear_retract_feasibility({CVec{1.0, 0.0, 0.0}, CVec{0.0, 1.0, 1.0}});
    CHECK(bad.status == Feasibility::kInfeasible);
    CHECK(bad.norm >= 1.01);
    CHECK(bad.lipschitz > 0.0);

    Sampler rng(63);
    for (int k = 0; k < 2; ++k) {
      const PlaneSpec g{rng.complex_sphere(3), rng.complex_sphere(3)};
      CHECK_FALSE(lemma_linret_admissible(g));
      const FeasibilityResult r = linear_retract_feasibility(g);
      CHECK(r.status == Feasibility::kInfeasible);
      CHECK(r.norm >= 1.01);
    }
  }

  TEST_CASE("third coordinates must vanish toward the Shilov boundary") {
    const std::vector<double> eps{0.1, 0.01, 0.001};
    const RemfzeroResult zero = remfzero_decay_check(eps, [](const CVec&) { return Complex(0.0); });
    CHECK(zero.report.passed());
    REQUIRE(zero.bounds.size() == 3);
    for (std::size_t i = 0; i < eps.size(); ++i) {
      const double r = 1.0 - eps[i];
      CHECK(zero.bounds[i] == doctest::Approx(std::sqrt(1.0 - r * r)).epsilon(1e-9));
    }
    CHECK(zero.bounds[0] > zero.bounds[1]);
    CHECK(zero.bounds[1] > zero.bounds[2]);
    CHECK(zero.report.find("bounds decrease")->passed);

    const RemfzeroResult constant =
        remfzero_decay_check(eps, [](const CVec&) { return Complex(0.3); });
    CHECK_FALSE(constant.report.passed());
    CHECK(constant.report.checks[0].passed);
    CHECK_FALSE(constant.report.checks[1].passed);
    CHECK(constant.sup_f[2] == doctest::Approx(0.3));
    CHECK_THROWS_AS(remfzero_decay_check(std::vector<double>{0.0}, nullptr), SpecError);
  }
}
