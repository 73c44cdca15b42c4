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

// Explicit holomorphic maps between the domains: the biholomorphisms
// L_2 -> D^2 and L_3 -> R_III(2), the 2-proper map Lambda: R_III(2) -> E with
// its fibers and critical set, the matrix Moebius automorphisms of R_III(2),
// the left inverses Psi_omega: E -> D, symmetrization, the power maps
// E(p) -> B_n with branch-tracked roots, and ball automorphisms.

#ifndef LRETRACT_MAPS_HPP_
#define LRETRACT_MAPS_HPP_

#include <array>
#include <cstdint>
#include <map>
#include <mutex>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "lretract/types.hpp"

namespace lretract {

/// Strict: inputs must lie in the open domain. Closure: inputs may lie on
/// the boundary, up to kClosureTol.
enum class Admission { kStrict, kClosure };

/// phi(z1, z2) = (z1 + i z2, -z1 + i z2), L_2 -> D^2.
CVec phi(const CVec& z, Admission mode = Admission::kStrict);
CVec phi_inv(const CVec& w, Admission mode = Admission::kStrict);

/// psi(z) = [[z1 + i z2, z3], [z3, -z1 + i z2]], L_3 -> R_III(2).
SymMat2 psi(const CVec& z, Admission mode = Admission::kStrict);
CVec psi_inv(const SymMat2& a, Admission mode = Admission::kStrict);

/// Lambda(A) = (a11, a22, a11 a22 - a12^2).
CVec lambda(const SymMat2& a);

struct FiberResult {
  std::vector<SymMat2> points;
  int multiplicity = 0;
};

/// Lambda^{-1}(x): the matrices with a12 = +-sqrt(x1 x2 - x3); a single
/// matrix when x1 x2 - x3 == 0. Throws DomainError unless x is in E (or its
/// closure in closure mode).
FiberResult lambda_fiber(const CVec& x, Admission mode = Admission::kClosure);

/// Determinant of the 3x3 Jacobian of Lambda in the coordinates
/// (a11, a22, a12); equals -2 a12.
Complex lambda_jacobian_det(const SymMat2& a);
bool is_critical_lambda(const SymMat2& a);

/// General 2x2 complex matrix, row major.
struct Mat2 {
  Complex m00{}, m01{}, m10{}, m11{};

  Complex det() const noexcept { return m00 * m11 - m01 * m10; }
  /// Throws SingularError when |det| < guard.
  Mat2 inverse(double guard = 1e-14) const;
  friend Mat2 operator*(const Mat2& a, const Mat2& b) noexcept;
  static Mat2 from(const SymMat2& s) noexcept { return {s.a11, s.a12, s.a12, s.a22}; }
};

/// (A - B)(I - conj(B) A)^{-1} with B = [[0, lam], [lam, 0]], as a general
/// matrix (for symmetry checks).
Mat2 aut_rIII2_matrix(Complex lam, const SymMat2& a);
/// The automorphism Psi_lam of R_III(2). Throws SpecError for |lam| >= 1,
/// DomainError for A outside R_III(2) and SingularError if the inverse does
/// not exist.
SymMat2 aut_rIII2(Complex lam, const SymMat2& a);

/// Psi_omega(z) = (omega z3 - z2) / (omega z1 - 1). Throws SpecError unless
/// |omega| = 1 and DomainError when the denominator is below 1e-14.
Complex psi_omega(Complex omega, const CVec& z);

/// (z, w) -> (z + w, z w).
std::pair<Complex, Complex> symmetrization(Complex z, Complex w);

/// (z_1^{p_1}, ..., z_n^{p_n}).
CVec ellipsoid_power(const CVec& z, std::span<const int> p);

/// A point of B_n together with a chosen preimage under the power map.
struct RootBasepoint {
  CVec base;
  CVec root;
};

/// Throws SpecError unless root^p == base (relative 1e-12).
void validate_root_basepoint(const RootBasepoint& bp, std::span<const int> p);

/// Continues the branch of z -> z^{1/p} fixed at the basepoint along the
/// straight segment from bp.base to x. Throws BranchAmbiguityError when the
/// segment passes within 1e-10 of a zero of a coordinate with p_j >= 2.
CVec ellipsoid_root(const CVec& x, std::span<const int> p,
                    const RootBasepoint& bp);

/// Same continuation along the polyline bp.base -> waypoints[0] -> ... ->
/// waypoints.back().
CVec ellipsoid_root_along(std::span<const CVec> waypoints,
                          std::span<const int> p, const RootBasepoint& bp);

/// The involutive automorphism of B_n exchanging 0 and a:
/// (a - P_a z - s_a Q_a z) / (1 - <z, a>), s_a = sqrt(1 - |a|^2).
/// With a = 0 this is z -> -z.
CVec ball_moebius(const CVec& a, const CVec& z);

/// One sheet of Lambda over a simply connected part of E \ R: the branch
/// of a12 = sqrt(x1 x2 - x3) selected at a basepoint matrix and continued
/// along straight segments in x-space. Lifts are cached per target point.
class LambdaSheet {
 public:
  /// Throws SpecError when the basepoint lies on the critical set.
  explicit LambdaSheet(const SymMat2& basepoint);

  const SymMat2& basepoint() const noexcept { return base_; }
  const CVec& base_image() const noexcept { return base_x_; }

  /// The fiber point of x on this sheet. Throws BranchAmbiguityError when
  /// the segment from Lambda(basepoint) to x passes through the royal
  /// variety x1 x2 = x3.
  SymMat2 lift(const CVec& x) const;

  std::size_t cache_size() const;

 private:
  using Key = std::array<std::uint64_t, 6>;
  static Key key_of(const CVec& x) noexcept;
  Complex continue_root(const CVec& x) const;

  SymMat2 base_;
  CVec base_x_;
  mutable std::mutex mu_;
  mutable std::map<Key, Complex> cache_;
};

namespace map {
struct PhiL2ToBidisc {};
struct PsiL3ToRIII2 {};
struct LambdaToE {};
struct Symmetrization {};
struct EllipsoidPower { std::vector<int> p; };
struct EllipsoidRoot { std::vector<int> p; RootBasepoint basepoint; };
struct AutRIII2 { Complex lam; };
struct LeftInversePsiOmega { Complex omega; };
struct BallMoebius { CVec a; };
}  // namespace map

using MapDescriptor =
    std::variant<map::PhiL2ToBidisc, map::PsiL3ToRIII2, map::LambdaToE,
                 map::Symmetrization, map::EllipsoidPower, map::EllipsoidRoot,
                 map::AutRIII2, map::LeftInversePsiOmega, map::BallMoebius>;

/// Throws SpecError when parameters are out of range.
void validate(const MapDescriptor& m);

/// Applies a map with matrices packed as (a11, a12, a22) and scalar outputs
/// as one-dimensional vectors.
CVec apply(const MapDescriptor& m, const CVec& z);

}  // namespace lretract

#endif  // LRETRACT_MAPS_HPP_
