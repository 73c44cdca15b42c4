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

// Membership predicates, level functions and samplers for the domains the
// library works with: disc, polydisc, ball, Lie ball L_n, the matrix domain
// R_III(2) of 2x2 symmetric contractions, the tetrablock E, the symmetrized
// bidisc G_2, complex ellipsoids E(p), and the indicatrix of E at 0.
//
// Every domain has a level function that is < 1 exactly on the domain. For
// the balanced convex domains it is the Minkowski gauge; for E, G_2 and
// E(p) it is the natural defining function (largest singular value of a
// fiber matrix, largest root modulus, weighted power sum).

#ifndef LRETRACT_DOMAINS_HPP_
#define LRETRACT_DOMAINS_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "lretract/types.hpp"

namespace lretract {

inline constexpr double kClosureTol = 1e-12;

namespace domain {
struct Disc {};
struct Polydisc { int n = 2; };
struct Ball { int n = 2; };
struct LieBall { int n = 3; };
struct RIII2 {};       // points packed as (a11, a12, a22)
struct Tetrablock {};
struct SymBidisc {};   // points (s, p)
struct Ellipsoid { std::vector<int> p; };
struct IndicatrixE0 {};
}  // namespace domain

using DomainDescriptor =
    std::variant<domain::Disc, domain::Polydisc, domain::Ball, domain::LieBall,
                 domain::RIII2, domain::Tetrablock, domain::SymBidisc,
                 domain::Ellipsoid, domain::IndicatrixE0>;

/// Throws SpecError when parameters are out of range (n < 1, p_j < 1, or an
/// ellipsoid with every exponent equal to 1).
void validate(const DomainDescriptor& d);
std::size_t dimension(const DomainDescriptor& d);
std::string name(const DomainDescriptor& d);
/// Inverse of name(): "disc", "polydisc:2", "lie:3", "ellipsoid:2,1", ...
/// Throws SpecError for unknown or malformed names.
DomainDescriptor parse_domain(std::string_view text);

double level(const DomainDescriptor& d, const CVec& z);
bool contains(const DomainDescriptor& d, const CVec& z);
bool in_closure(const DomainDescriptor& d, const CVec& z,
                double tol = kClosureTol);

/// Seeded points of the domain. Not uniform in general; the radial law puts
/// a good share of the mass near the topological boundary.
std::vector<CVec> sample(const DomainDescriptor& d, std::size_t count,
                         std::uint64_t seed);

// -- Lie ball --------------------------------------------------------------

/// 2||z||^2 - |z.z|^2.
double lie_defining_value(const CVec& z);
/// Minkowski gauge of L_n: sqrt(||z||^2 + sqrt(||z||^4 - |z.z|^2)).
double lie_norm(const CVec& z);
bool in_lie_ball(const CVec& z, int n);

struct BoundarySample {
  enum class Stratum { kShilov, kTopological };
  CVec point;
  Stratum stratum = Stratum::kShilov;
};

/// omega * x with |omega| = 1 and x a real unit vector. Throws SpecError
/// for n < 1 or count < 1.
std::vector<BoundarySample> sample_shilov_lie(int n, std::size_t count,
                                              std::uint64_t seed);

// -- R_III(2) and the tetrablock ------------------------------------------

bool in_rIII2(const SymMat2& a);

/// The matrix with diagonal (x1, x2) and a12 the principal square root of
/// x1 x2 - x3, so that Lambda of it is x.
SymMat2 tetrablock_fiber_matrix(const CVec& x);
double tetrablock_level(const CVec& x);
bool in_tetrablock(const CVec& x);

// -- symmetrized bidisc -----------------------------------------------------

/// Largest modulus of the roots of t^2 - s t + p.
double sym_bidisc_level(Complex s, Complex p);
bool in_sym_bidisc(Complex s, Complex p);

// -- ellipsoids -------------------------------------------------------------

double ellipsoid_level(const CVec& z, std::span<const int> p);
bool in_ellipsoid(const CVec& z, std::span<const int> p);

// -- indicatrix of E at 0 ---------------------------------------------------

/// max(|z1| + |z3|, |z2| + |z3|).
double gauge_indicatrix_E0(const CVec& z);

// -- standard gauges --------------------------------------------------------

bool in_disc(Complex z);
bool in_polydisc(const CVec& z, int n);
bool in_ball(const CVec& z, int n);

}  // namespace lretract

#endif  // LRETRACT_DOMAINS_HPP_
