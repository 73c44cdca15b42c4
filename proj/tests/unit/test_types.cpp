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
#include <complex>

#include "doctest.h"
#include "lretract/errors.hpp"
#include "lretract/sampling.hpp"
#include "lretract/types.hpp"
#include "oracles.hpp"

using namespace lretract;

TEST_SUITE("types") {
  TEST_CASE("vector arithmetic and norms") {
    const CVec a{Complex(3, 0), Complex(0, 4)};
    const CVec b{Complex(1, 1), Complex(-1, 2)};
    CHECK(norm_sq(a) == doctest::Approx(25.0));
    CHECK(norm(a) == doctest::Approx(5.0));
    CHECK(max_abs(a) == doctest::Approx(4.0));
    const CVec s = a + b;
    CHECK(s[0] == Complex(4, 1));
    CHECK(s[1] == Complex(-1, 6));
    CHECK((a - a) == CVec{0.0, 0.0});
    CHECK((kI * a)[0] == Complex(0, 3));
    CHECK(distance(a, b) == doctest::Approx(norm(a - b)));
  }

  TEST_CASE("inner is conjugate linear in the second slot, bullet is bilinear") {
    const CVec z{Complex(1, 2), Complex(0, 1)};
    const CVec w{Complex(0, 1), Complex(2, 0)};
    CHECK(inner(z, w) == Complex(1, 2) * Complex(0, -1) + Complex(0, 1) * 2.0);
    CHECK(bullet(z, w) == Complex(1, 2) * Complex(0, 1) + Complex(0, 1) * 2.0);
    CHECK(inner(z, z).imag() == 0.0);
    CHECK(inner(z, z).real() == doctest::Approx(norm_sq(z)));
  }

  TEST_CASE("dimension mismatches throw") {
    const CVec z{1.0, 2.0};
    const CVec w{1.0, 2.0, 3.0};
    CHECK_THROWS_AS(inner(z, w), DimensionError);
    CHECK_THROWS_AS(bullet(z, w), DimensionError);
    CHECK_THROWS_AS(require_dim(z, 3, "probe"), DimensionError);
    CHECK_NOTHROW(require_dim(z, 2, "probe"));
    CHECK_THROWS_AS(SymMat2::from_cvec(z), DimensionError);
  }

  TEST_CASE("lexicographic order") {
    CHECK(lex_less(CVec{Complex(0, 1)}, CVec{Complex(1, 0)}));
    CHECK(lex_less(CVec{Complex(0, 0)}, CVec{Complex(0, 1)}));
    CHECK_FALSE(lex_less(CVec{Complex(1, 1)}, CVec{Complex(1, 1)}));
    CHECK(lex_less(CVec{1.0}, CVec{1.0, 0.0}));
  }

  TEST_CASE("finiteness") {
    CHECK(CVec{1.0, 2.0}.all_finite());
    CHECK_FALSE(CVec{1.0, Complex(0, std::nan(""))}.all_finite());
    CHECK_FALSE(CVec{Complex(INFINITY, 0)}.all_finite());
  }

  TEST_CASE("2x2 symmetric singular values agree with Jacobi SVD") {
    Sampler rng(7);
    double worst = 0.0;
    for (int k = 0; k < 2000; ++k) {
      const SymMat2 a{rng.complex_normal(), rng.complex_normal(), rng.complex_normal()};
      Eigen::Matrix2cd m;
      m << a.a11, a.a12, a.a12, a.a22;
      const auto sv = Eigen::JacobiSVD<Eigen::Matrix2cd>(m).singularValues();
      worst = std::max(worst, std::abs(a.sigma_max() - sv(0)));
      worst = std::max(worst, std::abs(a.sigma_min() - sv(1)));
    }
    CHECK(worst < 1e-12);
  }

  TEST_CASE("packing round trip and determinant") {
    const SymMat2 a{Complex(0.1, 0.2), Complex(0.3, -0.1), Complex(-0.4, 0.0)};
    CHECK(SymMat2::from_cvec(a.to_cvec()) == a);
    CHECK(std::abs(a.det() - (a.a11 * a.a22 - a.a12 * a.a12)) == 0.0);
    CHECK(a.frobenius_sq() ==
          doctest::Approx(std::norm(a.a11) + 2 * std::norm(a.a12) + std::norm(a.a22)));
    CHECK(distance(a, a) == 0.0);
    const SymMat2 zero{};
    CHECK(zero.sigma_max() == 0.0);
  }
}
