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

// Numerical lemma batteries: the (alpha, beta) disc inequality, the L_3
// obstruction, linear retractions of the indicatrix of E at 0 and the decay
// forced on third coordinates near the Shilov boundary of L_2.

#ifndef LRETRACT_VERIFY_HPP_
#define LRETRACT_VERIFY_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "lretract/report.hpp"
#include "lretract/retractions.hpp"
#include "lretract/types.hpp"

namespace lretract {

struct Lemma41Result {
  double max_violation = 0.0;
  Complex witness;
};

/// max over |l| <= 1 of |1 + alpha(l - 1)| + |beta||l - 1| - 1 on a polar
/// grid plus boundary angles +-2^-k (k = 0..20) and l = -1. grid >= 64.
Lemma41Result lemma41_check(Complex alpha, Complex beta, int grid = 64);

/// [r^2(1 + |a|^2) + 2(1 - r^2)] - [1 + (|a| r^2 + 1 - r^2)^2] for |a| < 1,
/// 0 < r < 1; equals r^2 (1 - r^2)(1 - |a|)^2.
double l3_obstruction(Complex a, double r);

/// Row-major 3 x 3 complex matrix.
using LinearMap3 = retraction::Linear3;

CVec apply(const LinearMap3& m, const CVec& z);
LinearMap3 identity_map3();

/// Lower estimate of sup{ g(Rz) : g(z) = 1 } for the indicatrix gauge g of E
/// at 0: structured extreme points and seeded sphere samples, then
/// refine_steps sweeps of coordinate-wise ascent on the best candidates.
/// Never exceeds the true norm and never decreases with refine_steps.
double gauge_operator_norm(const LinearMap3& m, std::size_t boundary_samples = 2048,
                           int refine_steps = 20, std::uint64_t seed = 0);

/// A complex plane of C^3 spanned by u and v.
struct PlaneSpec {
  CVec u;
  CVec v;
};

/// Throws SpecError unless u, v are independent (smallest singular value of
/// [u v] >= 1e-10).
void validate(const PlaneSpec& plane);

/// Unit normal of the plane.
CVec plane_normal(const PlaneSpec& plane);

/// Plane is C^2 x {0} or contains (0, 0, 1), the forms admitted by the lemma.
bool lemma_linret_admissible(const PlaneSpec& plane, double tol = 1e-10);

enum class Feasibility { kFeasible, kInfeasible, kInconclusive };

struct FeasibilityResult {
  Feasibility status = Feasibility::kInconclusive;
  bool feasible() const noexcept { return status == Feasibility::kFeasible; }
  LinearMap3 best;
  double norm = 0.0;
  /// Largest observed |dN| / |dc| between scan samples of the kernel chart.
  double lipschitz = 0.0;
  std::size_t evaluations = 0;
};

/// Projections onto the plane along a kernel line k = n + c1 e1 + c2 e2
/// (e1, e2 an orthonormal basis of the plane, n its normal), minimising the
/// gauge operator norm over (c1, c2) from 64 starts. Feasible iff the
/// minimum is <= 1 + tol, infeasible iff >= 1.01, inconclusive otherwise.
FeasibilityResult linear_retract_feasibility(const PlaneSpec& plane, double tol = 1e-6,
                                             std::size_t budget = 20000);

struct RemfzeroResult {
  VerificationReport report;
  std::vector<double> eps;
  /// Largest |z3| with (z1, z2, z3) in L_3 over the shell at distance eps
  /// from the Shilov boundary of L_2.
  std::vector<double> bounds;
  std::vector<double> sup_f;
};

/// For each eps, compares sup |f| over shell points (1 - eps) w x (|w| = 1,
/// x a real unit vector) with the membership bound, and checks that the
/// bounds decrease with eps. f may be empty (f = 0).
RemfzeroResult remfzero_decay_check(std::span<const double> eps,
                                    const std::function<Complex(const CVec&)>& f,
                                    std::size_t samples_per_shell = 256,
                                    std::uint64_t seed = 0);

}  // namespace lretract

#endif  // LRETRACT_VERIFY_HPP_
