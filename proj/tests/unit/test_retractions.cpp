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
#include "lretract/domains.hpp"
#include "lretract/errors.hpp"
#include "lretract/maps.hpp"
#include "lretract/retractions.hpp"
#include "lretract/sampling.hpp"
#include "oracles.hpp"

using namespace lretract;

namespace {

VerifyOptions opts(std::size_t samples, std::uint64_t seed = 0, unsigned workers = 1) {
  VerifyOptions o;
  o.samples = samples;
  o.seed = seed;
  o.workers = workers;
  o.tol = 1e-10;
  return o;
}

void require_all_pass(const RetractionSpec& spec, std::size_t samples = 2000) {
  const VerificationReport rep = verify_retraction(spec, natural_domain(spec), opts(samples));
  CAPTURE(name(spec));
  REQUIRE(rep.checks.size() == 3);
  for (const auto& c : rep.checks) {
    CAPTURE(c.name);
    CAPTURE(c.max_violation);
    CHECK(c.passed);
    CHECK(c.samples == samples);
  }
}

retraction::EllipsoidLift ellipsoid_example() {
  retraction::EllipsoidLift e;
  e.p = {2, 1};
  e.slice.point = CVec{0.5, 0.0};
  e.slice.directions = {CVec{0.0, 1.0}};
  return e;
}

}  // namespace

TEST_SUITE("retractions") {
  TEST_CASE("bidisc retraction onto a graph") {
    CHECK(bidisc_Ra(kI, CVec{0.0, 0.0}) == CVec{0.0, 0.0});
    CHECK(bidisc_Ra(kI, CVec{0.5, 0.9}) == CVec{0.5, Complex(0, 0.5)});
    Sampler rng(41);
    for (int k = 0; k < 10000; ++k) {
      const Complex a = rng.disc();
      const CVec z{rng.disc(), rng.disc()};
      const CVec r = bidisc_Ra(a, z);
      CHECK(bidisc_Ra(a, r) == r);
    }
  }

  TEST_CASE("bidisc retraction along the unimodular line") {
    CHECK(bidisc_Rat(kI, 1.0, CVec{0.3, 0.7}) == bidisc_Ra(kI, CVec{0.3, 0.7}));
    const CVec h = bidisc_Rat(1.0, 0.5, CVec{0.2, 0.6});
    CHECK(std::abs(h[0] - 0.4) < 1e-15);
    CHECK(std::abs(h[1] - 0.4) < 1e-15);
    const Complex a = std::polar(1.0, 0.7);
    for (double t : {0.0, 0.25, 1.0}) {
      for (int k = 0; k < 32; ++k) {
        const Complex l = std::polar(0.99 * k / 31.0, 0.3 * k);
        const CVec v{l, a * l};
        CHECK(distance(bidisc_Rat(a, t, v), v) < 1e-15);
      }
    }
    CHECK_THROWS_AS(validate(retraction::BidiscRat{0.5, 0.3}), SpecError);
    CHECK_THROWS_AS(validate(retraction::BidiscRat{1.0, 1.5}), SpecError);
    CHECK_THROWS_AS(validate(retraction::BidiscRa{1.5}), SpecError);
  }

  TEST_CASE("the even Lie ball retraction") {
    CHECK(lie_even_retraction(CVec(4)) == CVec(4));
    const Complex w(0.3, 0.2);
    const CVec fixed{w, kI * w, 0.0, 0.0};
    CHECK(distance(lie_even_retraction(fixed), fixed) < 1e-16);
    CHECK(in_lie_ball(fixed, 4));
    CHECK_THROWS_AS(validate(retraction::LieEven{1}), SpecError);
    CHECK_THROWS(lie_even_retraction(CVec(3)));
  }

  TEST_CASE("fixed set of the even Lie ball retraction and its membership threshold") {
    Sampler rng(42);
    for (int n : {2, 3}) {
      for (int k = 0; k < 1000; ++k) {
        const CVec dir = rng.complex_sphere(static_cast<std::size_t>(n));
        for (double delta : {-1e-3, 1e-3}) {
          const double s = std::sqrt(0.25 + delta);  // sum |w_k|^2 = 1/4 + delta
          CVec z(static_cast<std::size_t>(2 * n));
          for (int j = 0; j < n; ++j) {
            z[2 * j] = s * dir[j];
            z[2 * j + 1] = kI * s * dir[j];
          }
          CHECK(distance(lie_even_retraction(z), z) < 1e-15);
          CHECK(in_lie_ball(z, 2 * n) == (delta < 0));
        }
      }
    }
  }

  TEST_CASE("tetrablock retractions") {
    CHECK(tetra_royal(CVec(3)) == CVec(3));
    CHECK(tetra_sym(CVec(3)) == CVec(3));
    const Complex a(0.3, 0.1), b(-0.2, 0.5);
    CHECK(distance(tetra_royal(CVec{a, b, a * b}), CVec{a, b, a * b}) < 1e-16);
    const CVec sym{0.4, 0.4, Complex(0.1, 0.1)};
    CHECK(tetra_sym(sym) == sym);
    for (const CVec& z : sample(domain::Tetrablock{}, 10000, 43)) {
      const CVec r = tetra_royal(z);
      CHECK(oracle::in_tetrablock(r));
      const CVec s = tetra_sym(z);
      CHECK(oracle::in_tetrablock(s));
      CHECK(oracle::in_sym_bidisc(2.0 * s[0], s[2]));
    }
  }

  TEST_CASE("indicatrix retractions") {
    CHECK(indicatrix_Rt(0.5, CVec(3)) == CVec(3));
    const CVec z{0.2, 0.7, 0.1};
    const CVec r = indicatrix_Rt(1.0, z);
    CHECK(r == CVec{0.2, 0.2, 0.1});
    CHECK(gauge_indicatrix_E0(z) == doctest::Approx(0.8));
    CHECK(gauge_indicatrix_E0(r) == doctest::Approx(0.3));
    CHECK(indicatrix_proj12(CVec{0.3, 0.4, 0.2}) == CVec{0.3, 0.4, 0.0});
    for (const CVec& x : sample(domain::IndicatrixE0{}, 5000, 44)) {
      for (double t : {0.0, 0.3, 1.0}) {
        CHECK(gauge_indicatrix_E0(indicatrix_Rt(t, x)) <= gauge_indicatrix_E0(x));
      }
      CHECK(gauge_indicatrix_E0(indicatrix_proj12(x)) <= gauge_indicatrix_E0(x));
      CHECK(indicatrix_proj12(indicatrix_proj12(x)) == indicatrix_proj12(x));
    }
    CHECK_THROWS_AS(validate(retraction::IndicatrixRt{-0.1}), SpecError);
    CHECK_THROWS_AS(validate(retraction::IndicatrixRt{1.1}), SpecError);
  }

  TEST_CASE("ball slice retraction") {
    retraction::AffineSlice s;
    s.point = CVec{0.3, 0.2, 0.0};
    s.directions = {CVec{0.0, 1.0, 1.0}};
    const BallSliceRetraction r(s);
    CHECK(std::abs(inner(r.center(), r.basis()[0])) < 1e-15);
    CHECK(r.radius() == doctest::Approx(std::sqrt(1 - norm_sq(r.center()))));
    Sampler rng(45);
    double idem = 0.0;
    for (int k = 0; k < 2000; ++k) {
      const CVec w = rng.ball(3) * Complex(0.99);
      const CVec v = r(w);
      CHECK(norm(v) < 1.0);
      CHECK(r.distance_to_affine_span(v) < 1e-13);
      idem = std::max(idem, distance(r(v), v));
    }
    CHECK(idem < 1e-12);
    // Exact minimum of |w_0| over the closed slice, against a dense scan.
    double scan = INFINITY;
    for (int i = 0; i <= 400; ++i) {
      for (int j = 0; j < 64; ++j) {
        const CVec v = r.center() + r.basis()[0] * std::polar(r.radius() * i / 400.0,
                                                               2 * std::numbers::pi * j / 64);
        scan = std::min(scan, std::abs(v[0]));
      }
    }
    CHECK(r.min_coordinate_modulus(0) <= scan + 1e-12);
    CHECK(r.min_coordinate_modulus(0) == doctest::Approx(scan).epsilon(1e-3));
  }

  TEST_CASE("lifted ellipsoid retraction") {
    const auto e = ellipsoid_example();
    const Retraction r(e);
    for (int k = 0; k < 50; ++k) {
      const Complex w = std::polar(0.8 * std::sqrt(0.75) * k / 49.0, 0.4 * k);
      const CVec fixed{std::sqrt(0.5), w};
      CHECK(distance(r(fixed), fixed) < 1e-12);
    }
    double idem = 0.0;
    for (const CVec& z : sample(domain::Ellipsoid{{2, 1}}, 1000, 46)) {
      const CVec v = r(z);
      CHECK(in_ellipsoid(v, std::vector<int>{2, 1}));
      idem = std::max(idem, distance(r(v), v));
    }
    CHECK(idem < 1e-10);

    retraction::EllipsoidLift ball = e;
    ball.p = {1, 1};
    const Retraction rb(ball);
    const BallSliceRetraction slice(ball.slice);
    for (const CVec& z : sample(domain::Ball{2}, 500, 47)) {
      CHECK(distance(rb(z), slice(z)) < 1e-14);
    }

    retraction::EllipsoidLift bad = e;
    bad.slice.point = CVec{0.0, 0.0};
    bad.slice.directions = {CVec{1.0, 1.0}};
    CHECK_THROWS_AS(validate(bad), SpecError);
    bad = e;
    bad.basepoint = {CVec{0.25, 0.0}, CVec{0.5, 0.0}};
    CHECK_THROWS_AS(validate(bad), SpecError);
  }

  TEST_CASE("lifts through Lambda") {
    const SymMat2 base{0.1, Complex(0.3, 0.2), -0.1};
    const CVec x0 = lambda(base);

    retraction::LambdaLift id;
    id.basepoint = base;
    id.inner = retraction::IdentityOnPatch{x0, 0.05};
    const Retraction r(id);
    CHECK(distance(r(base.to_cvec()), base.to_cvec()) < 1e-15);
    double roundtrip = 0.0, idem = 0.0;
    for (const CVec& a : r.sample_domain(500, 48)) {
      const CVec v = r(a);
      roundtrip = std::max(roundtrip, distance(lambda(SymMat2::from_cvec(v)),
                                                lambda(SymMat2::from_cvec(a))));
      idem = std::max(idem, distance(r(v), v));
    }
    CHECK(roundtrip < 1e-12);
    CHECK(idem < 1e-12);
    require_all_pass(id, 1000);

    retraction::LambdaLift constant;
    constant.basepoint = base;
    constant.inner = retraction::ConstantInner{CVec{0.0, 0.0, 0.3}};
    const Retraction rc(constant);
    const CVec img = rc(CVec{0.2, 0.1, 0.3});
    CHECK(distance(lambda(SymMat2::from_cvec(img)), CVec{0.0, 0.0, 0.3}) < 1e-12);
    require_all_pass(constant, 1000);

    retraction::LambdaLift bad = constant;
    bad.inner = retraction::ConstantInner{CVec{0.2, 0.3, 0.06}};
    CHECK_THROWS_AS(validate(bad), SpecError);
    bad.basepoint = SymMat2{0.1, 0.0, 0.2};
    bad.inner = retraction::ConstantInner{CVec{0.0, 0.0, 0.3}};
    CHECK_THROWS_AS(validate(bad), SpecError);
    bad = id;
    bad.inner = retraction::IdentityOnPatch{CVec{0.5, 0.5, 0.0}, 0.05};
    CHECK_THROWS_AS(validate(bad), SpecError);
  }

  TEST_CASE("linear retractions must be idempotent") {
    retraction::Linear3 m;
    m.m = {1.0, 0.0, 0.0, 0.5, 0.0, 0.0, 0.0, 0.0, 1.0};  // R_t, t = 1/2
    CHECK_NOTHROW(validate(m));
    require_all_pass(m, 1000);
    m.m[4] = 0.5;
    CHECK_THROWS_AS(validate(m), SpecError);
  }

  TEST_CASE("every family passes the three checks") {
    const RetractionSpec specs[] = {
        retraction::BidiscRa{Complex(0.3, -0.6)},
        retraction::BidiscRat{std::polar(1.0, 2.0), 0.4},
        retraction::LieEven{2},
        retraction::LieEven{3},
        retraction::TetraRoyal{},
        retraction::TetraSym{},
        retraction::IndicatrixProj12{},
        retraction::IndicatrixRt{0.7},
        ellipsoid_example(),
    };
    for (const auto& s : specs) require_all_pass(s);
  }

  TEST_CASE("verification reports the three named checks and flags failures") {
    const VerificationReport rep =
        verify_retraction(retraction::TetraRoyal{}, domain::Tetrablock{}, opts(500));
    REQUIRE(rep.find("image") != nullptr);
    REQUIRE(rep.find("idempotence") != nullptr);
    REQUIRE(rep.find("fixing") != nullptr);
    // A retraction is only verified on its own domain.
    CHECK_THROWS_AS(verify_retraction(retraction::TetraRoyal{}, domain::IndicatrixE0{}, opts(200)),
                    SpecError);
  }

  TEST_CASE("reports are independent of the worker count") {
    std::vector<SampleRecord> rec1, rec4;
    VerifyOptions o1 = opts(3000, 9, 1), o4 = opts(3000, 9, 4);
    o1.records = &rec1;
    o4.records = &rec4;
    const auto a = verify_retraction(retraction::TetraSym{}, domain::Tetrablock{}, o1);
    const auto b = verify_retraction(retraction::TetraSym{}, domain::Tetrablock{}, o4);
    REQUIRE(a.checks.size() == b.checks.size());
    for (std::size_t i = 0; i < a.checks.size(); ++i) {
      CHECK(a.checks[i].max_violation == b.checks[i].max_violation);
      CHECK(a.checks[i].witness == b.checks[i].witness);
      CHECK(a.checks[i].samples == b.checks[i].samples);
    }
    REQUIRE(rec1.size() == rec4.size());
    CHECK(rec1.size() == 3 * 3000);
    for (std::size_t i = 0; i < rec1.size(); ++i) {
      CHECK(rec1[i].check == rec4[i].check);
      CHECK(rec1[i].index == rec4[i].index);
      CHECK(rec1[i].violation == rec4[i].violation);
    }
  }

  TEST_CASE("compositions of retractions") {
    const auto same = compose_retracts_check(retraction::TetraRoyal{}, retraction::TetraRoyal{},
                                             CVec(3), opts(1000));
    CHECK(same.passed());
    CHECK(compose_retracts_check(retraction::TetraSym{}, retraction::TetraSym{}, CVec(3),
                                 opts(1000))
              .passed());
    // R_t o R_s fixes V_t for every s, because R_t only reads z1 and z3.
    for (double t : {0.0, 0.5, 1.0}) {
      for (double s : {0.0, 0.25, 1.0}) {
        const auto rep = compose_retracts_check(retraction::IndicatrixRt{t},
                                                retraction::IndicatrixRt{s}, CVec(3), opts(500));
        CHECK(rep.checks.size() == 2);
        CHECK(rep.passed());
      }
    }
    CHECK_FALSE(compose_retracts_check(retraction::IndicatrixProj12{}, retraction::IndicatrixRt{1.0},
                                       CVec(3), opts(500))
                    .passed());
  }

  TEST_CASE("left inverses through the symmetric retraction, per omega") {
    const std::vector<Complex> omegas{1.0, -1.0, kI};
    const auto royal = necessary_identity_check(retraction::TetraRoyal{}, omegas, opts(500));
    REQUIRE(royal.checks.size() == omegas.size());
    const auto sym = necessary_identity_check(retraction::TetraSym{}, omegas, opts(500));
    REQUIRE(sym.checks.size() == omegas.size());
    for (const auto& c : sym.checks) {
      CHECK(c.name.rfind("psi_omega o R = psi_omega, omega=", 0) == 0);
      CHECK(c.samples == 500);
      CHECK(c.max_violation > 1e-3);
      CHECK_FALSE(c.passed);
    }
  }
}
