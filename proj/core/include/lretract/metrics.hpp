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

// Invariant distances: the Poincare distance, Caratheodory lower bounds from
// explicit families of maps into the disc, and Lempert upper bounds from
// analytic discs found by a penalised simplex search.

#ifndef LRETRACT_METRICS_HPP_
#define LRETRACT_METRICS_HPP_

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "lretract/domains.hpp"
#include "lretract/report.hpp"
#include "lretract/retractions.hpp"
#include "lretract/types.hpp"

namespace lretract {

/// artanh |(l1 - l2) / (1 - conj(l2) l1)|. Throws DomainError off the disc.
double poincare(Complex l1, Complex l2);

/// Pseudo-hyperbolic distance |(l1 - l2) / (1 - conj(l2) l1)|.
double moebius_distance(Complex l1, Complex l2);

/// Sup of p(F(z), F(w)) over the first family_size members of a nested
/// family F of maps into the disc, so the bound never decreases as the
/// family grows. Supported: disc, polydisc, ball, Lie ball, R_III(2),
/// tetrablock, symmetrized bidisc and the indicatrix of E at 0; anything
/// else throws SpecError.
double carath_lower(const DomainDescriptor& domain, const CVec& z,
                    const CVec& w, int family_size = 64);

/// f(l)_j = T_{a_j}(sum_k c_kj l^k) with T_a(x) = (x + a)/(1 + conj(a) x).
/// With all centres zero this is a polynomial disc.
struct DiscMap {
  std::vector<CVec> coefficients;  // coefficients[k] multiplies l^k
  CVec centers;                    // empty means all zero
  int degree() const noexcept { return static_cast<int>(coefficients.size()) - 1; }
  std::size_t dim() const noexcept {
    return coefficients.empty() ? 0 : coefficients.front().dim();
  }
  CVec operator()(Complex l) const;
  bool is_constant() const noexcept;
};

/// Largest value of level(f(e^{i t})) - 1 over `points` equispaced t
/// (a non-positive value means the disc stays in the closure on the grid).
double boundary_excess(const DomainDescriptor& domain, const DiscMap& f,
                       std::size_t points = 256);

struct BoundPair {
  double lower = 0.0;
  double upper = 0.0;
  double gap = 0.0;
};

struct LempertResult {
  double value = 0.0;  // p(0, sigma), +inf when nothing feasible was found
  double sigma = 0.0;
  bool feasible = false;
  DiscMap disc;
  std::size_t evaluations = 0;
  std::string diagnostics;
};

/// Minimises p(0, sigma) over discs with f(0) = z, f(sigma) = w that stay in
/// the closure of the domain on a 256-point boundary grid. Structured seeds
/// (affine discs, polydisc geodesics, royal discs of E) are tried first and
/// then refined by restarted Nelder-Mead over polynomial discs of the given
/// degree with a penalty ramped by 10 per restart. `budget` caps objective
/// evaluations; a larger budget only extends the evaluation sequence, so the
/// value never increases with it.
LempertResult lempert_search(const DomainDescriptor& domain, const CVec& z,
                             const CVec& w, int degree = 4,
                             std::size_t budget = 4000);

double lempert_upper(const DomainDescriptor& domain, const CVec& z,
                     const CVec& w, int degree = 4, std::size_t budget = 4000);

BoundPair sandwich(const DomainDescriptor& domain, const CVec& z, const CVec& w,
                   int degree = 4, std::size_t budget = 4000,
                   int family_size = 64);

struct BidiscGeodesic {
  DiscMap f;
  double sigma = 0.0;  // f(0) = z, f(sigma) = w
  /// True when only one component is an automorphism of the disc, so the
  /// coordinate projection onto it is the only left inverse.
  bool unique_left_inverse = false;
  int left_inverse_coordinate = 0;
};

/// Geodesic of D^2 through z and w built from Moebius components. Throws
/// SpecError for z == w and DomainError off the bidisc.
BidiscGeodesic bidisc_geodesic(const CVec& z, const CVec& w);

/// For each pair (l1, l2): checks that f is a geodesic (its Caratheodory
/// bound reaches p(l1, l2)) and that R o f is one as well, each to `tol`.
/// A constant disc passes trivially with no samples.
VerificationReport pushforward_geodesic_check(
    const RetractionSpec& spec, const DiscMap& f,
    const std::vector<std::pair<Complex, Complex>>& pairs, double tol = 1e-9,
    int family_size = 64);

}  // namespace lretract

#endif  // LRETRACT_METRICS_HPP_
