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

// Holomorphic retractions R: D -> D (R o R = R) of the bidisc, the even Lie
// balls, the tetrablock, the indicatrix of E at 0, complex ellipsoids (lifted
// through the power map) and R_III(2) (lifted through Lambda), together with
// a sampling verifier for the retraction identities.

#ifndef LRETRACT_RETRACTIONS_HPP_
#define LRETRACT_RETRACTIONS_HPP_

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "lretract/domains.hpp"
#include "lretract/maps.hpp"
#include "lretract/report.hpp"
#include "lretract/types.hpp"

namespace lretract {

namespace retraction {

/// (z1, z2) -> (z1, a z1) on D^2, |a| <= 1.
struct BidiscRa { Complex a; };

/// (z1, z2) -> (t z1 + (1 - t) conj(a) z2)(1, a) on D^2, |a| = 1, t in [0, 1].
struct BidiscRat { Complex a; double t = 1.0; };

/// Pairwise (z_{2k-1}, z_{2k}) -> ((z_{2k-1} - i z_{2k})/2, (z_{2k} + i z_{2k-1})/2)
/// on L_{2n}, n >= 2. The parameter is n, so the ambient dimension is 2n.
struct LieEven { int n = 2; };

/// z -> (z1, z2, z1 z2) onto the royal variety of E.
struct TetraRoyal {};

/// z -> ((z1 + z2)/2, (z1 + z2)/2, z3) onto {(s/2, s/2, p) : (s, p) in G_2}.
struct TetraSym {};

/// z -> (z1, z2, 0) on the indicatrix of E at 0.
struct IndicatrixProj12 {};

/// z -> (z1, t z1, z3) on the indicatrix of E at 0, t in [0, 1].
struct IndicatrixRt { double t = 1.0; };

/// Affine subspace point + span(directions) of C^n.
struct AffineSlice {
  CVec point;
  std::vector<CVec> directions;
};

/// Phi o r o pi on E(p): pi the power map onto B_n, r the retraction of B_n
/// onto the slice, Phi the root branch continued from the basepoint.
/// An empty basepoint selects the slice centre with principal roots.
struct EllipsoidLift {
  std::vector<int> p;
  AffineSlice slice;
  RootBasepoint basepoint;
};

/// The retraction of E onto a single point.
struct ConstantInner { CVec point; };
/// The identity on a Euclidean ball patch of E (a retract of itself).
struct IdentityOnPatch {
  CVec center;
  double radius = 0.0;
};
using InnerRetraction = std::variant<ConstantInner, IdentityOnPatch>;

/// i o inner o Lambda on R_III(2), with i the Lambda-sheet through the
/// basepoint matrix.
struct LambdaLift {
  InnerRetraction inner;
  SymMat2 basepoint;
};

/// A linear idempotent map of C^3 acting on the indicatrix of E at 0, row
/// major.
struct Linear3 { std::array<Complex, 9> m{}; };

}  // namespace retraction

using RetractionSpec =
    std::variant<retraction::BidiscRa, retraction::BidiscRat,
                 retraction::LieEven, retraction::TetraRoyal,
                 retraction::TetraSym, retraction::IndicatrixProj12,
                 retraction::IndicatrixRt, retraction::EllipsoidLift,
                 retraction::LambdaLift, retraction::Linear3>;

/// Throws SpecError for parameters outside their legal range, including the
/// non-unimodular a of BidiscRat (R o R scales by t + (1 - t)|a|^2 there).
void validate(const RetractionSpec& spec);
DomainDescriptor natural_domain(const RetractionSpec& spec);
std::string name(const RetractionSpec& spec);

// -- the individual families ------------------------------------------------

CVec bidisc_Ra(Complex a, const CVec& z);
CVec bidisc_Rat(Complex a, double t, const CVec& z);
CVec lie_even_retraction(const CVec& z);
CVec tetra_royal(const CVec& z);
CVec tetra_sym(const CVec& z);
CVec indicatrix_Rt(double t, const CVec& z);
CVec indicatrix_proj12(const CVec& z);

/// The retraction of B_n onto V cap B_n obtained by conjugating the
/// orthogonal projection onto the direction space with the ball
/// automorphism exchanging 0 and the slice centre.
class BallSliceRetraction {
 public:
  explicit BallSliceRetraction(const retraction::AffineSlice& slice);

  CVec operator()(const CVec& w) const;

  /// Point of V closest to the origin.
  const CVec& center() const noexcept { return center_; }
  /// Orthonormal basis of the direction space.
  const std::vector<CVec>& basis() const noexcept { return basis_; }
  /// Radius of the slice ball V cap B_n around the centre.
  double radius() const noexcept { return radius_; }
  /// Exact minimum of |w_j| over the closed slice.
  double min_coordinate_modulus(std::size_t j) const;
  double distance_to_affine_span(const CVec& w) const;

 private:
  CVec project(const CVec& v) const;

  CVec center_;
  std::vector<CVec> basis_;
  double radius_ = 0.0;
};

CVec ellipsoid_lifted_retraction(const retraction::EllipsoidLift& spec,
                                 const CVec& z);
SymMat2 lifted_retraction_via_lambda(const retraction::LambdaLift& spec,
                                     const SymMat2& a);

/// A validated retraction with its precomputed state (slice geometry, Lambda
/// sheet cache). Copies share state and are safe to use from several threads.
class Retraction {
 public:
  explicit Retraction(RetractionSpec spec);

  const RetractionSpec& spec() const noexcept;
  const DomainDescriptor& domain() const noexcept;

  /// Throws DomainError when z is outside the closure of the domain on
  /// which the retraction is defined.
  CVec operator()(const CVec& z) const;

  /// Seeded points of the set on which the retraction is defined (the
  /// natural domain, or the Lambda-preimage of the patch for LambdaLift).
  std::vector<CVec> sample_domain(std::size_t count, std::uint64_t seed) const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

struct SampleRecord {
  std::string check;
  std::size_t index = 0;
  double violation = 0.0;
};

struct VerifyOptions {
  std::size_t samples = 10000;
  std::uint64_t seed = 0;
  double tol = 1e-10;
  unsigned workers = 1;
  /// When set, receives one row per sample and check (in sample order).
  std::vector<SampleRecord>* records = nullptr;
};

/// Checks R(z) in D, |R(R(z)) - R(z)| <= tol and |R(v) - v| <= tol for v on
/// the image. Throws SpecError for an invalid spec or a domain that is not
/// the spec's; per-sample failures are reported, not thrown.
VerificationReport verify_retraction(const RetractionSpec& spec,
                                     const DomainDescriptor& domain,
                                     const VerifyOptions& options);

/// For retractions R1, R2 of the same domain through a common point, checks
/// that R1 o R2 is the identity on the image of R1 and R2 o R1 on the image
/// of R2.
VerificationReport compose_retracts_check(const RetractionSpec& r1,
                                          const RetractionSpec& r2,
                                          const CVec& common_point,
                                          const VerifyOptions& options);

/// For a retraction of the tetrablock, reports per omega the maximum of
/// |Psi_omega(R(z)) - Psi_omega(z)| over samples (one check per omega).
VerificationReport necessary_identity_check(const RetractionSpec& spec,
                                            std::span<const Complex> omegas,
                                            const VerifyOptions& options);

}  // namespace lretract

#endif  // LRETRACT_RETRACTIONS_HPP_
