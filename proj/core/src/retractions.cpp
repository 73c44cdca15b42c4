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

#include "lretract/retractions.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <thread>

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

constexpr double kUnimodularTol = 1e-12;
constexpr double kIdempotentTol = 1e-12;
constexpr double kLocusMargin = 1e-10;
constexpr double kInputSlack = 1e-9;
constexpr std::uint64_t kImageSeedSalt = 0x9E3779B97F4A7C15ULL;

void require_in(const DomainDescriptor& d, const CVec& z, const char* what) {
  require_dim(z, dimension(d), what);
  if (!in_closure(d, z, kInputSlack)) {
    const double lv = level(d, z);
    throw DomainError(std::string(what) + ": point outside " + name(d) +
                          " (level " + std::to_string(lv) + ")",
                      lv);
  }
}

void require_unit_interval(double t, const char* what) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw SpecError(std::string(what) + ": t must lie in [0, 1]");
  }
}

std::string fmt_complex(Complex c) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "(%.6g,%.6g)", c.real(), c.imag());
  return buf;
}

CVec apply_linear3(const std::array<Complex, 9>& m, const CVec& z) {
  CVec out(3);
  for (std::size_t i = 0; i < 3; ++i) {
    out[i] = m[3 * i] * z[0] + m[3 * i + 1] * z[1] + m[3 * i + 2] * z[2];
  }
  return out;
}

double idempotence_defect(const std::array<Complex, 9>& m) {
  double worst = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      Complex acc{};
      for (std::size_t k = 0; k < 3; ++k) acc += m[3 * i + k] * m[3 * k + j];
      worst = std::max(worst, std::abs(acc - m[3 * i + j]));
    }
  }
  return worst;
}

// Patch checks are sampled: interior points plus the bounding sphere.
void validate_patch(const retraction::IdentityOnPatch& patch) {
  require_dim(patch.center, 3, "IdentityOnPatch");
  if (!(patch.radius > 0.0)) throw SpecError("IdentityOnPatch: radius must be positive");
  Sampler rng(0x5eedULL);
  for (int k = 0; k < 3072; ++k) {
    const CVec dir = rng.complex_sphere(3);
    const double r = k < 1024 ? patch.radius : patch.radius * rng.uniform();
    const CVec x = patch.center + dir * Complex(r);
    if (!(tetrablock_level(x) < 1.0)) {
      throw SpecError("IdentityOnPatch: patch is not contained in the tetrablock");
    }
    if (std::abs(x[0] * x[1] - x[2]) < 1e-8) {
      throw SpecError("IdentityOnPatch: patch meets the royal variety");
    }
  }
}

}  // namespace

// -- families -----------------------------------------------------------------

CVec bidisc_Ra(Complex a, const CVec& z) {
  if (!(std::abs(a) <= 1.0 + kUnimodularTol)) throw SpecError("R_a: |a| must be <= 1");
  require_in(domain::Polydisc{2}, z, "R_a");
  return CVec{z[0], a * z[0]};
}

CVec bidisc_Rat(Complex a, double t, const CVec& z) {
  if (std::abs(std::abs(a) - 1.0) > kUnimodularTol) {
    throw SpecError("R_(a,t): |a| must equal 1");
  }
  require_unit_interval(t, "R_(a,t)");
  require_in(domain::Polydisc{2}, z, "R_(a,t)");
  const Complex s = t * z[0] + (1.0 - t) * std::conj(a) * z[1];
  return CVec{s, s * a};
}

CVec lie_even_retraction(const CVec& z) {
  if (z.dim() % 2 != 0) throw DimensionError("LieEven: odd dimension");
  if (z.dim() < 4) throw SpecError("LieEven: needs n >= 2 (dimension >= 4)");
  CVec out(z.dim());
  for (std::size_t k = 0; k + 1 < z.dim(); k += 2) {
    out[k] = 0.5 * (z[k] - kI * z[k + 1]);
    out[k + 1] = 0.5 * (z[k + 1] + kI * z[k]);
  }
  return out;
}

CVec tetra_royal(const CVec& z) {
  require_in(domain::Tetrablock{}, z, "tetra_royal");
  return CVec{z[0], z[1], z[0] * z[1]};
}

CVec tetra_sym(const CVec& z) {
  require_in(domain::Tetrablock{}, z, "tetra_sym");
  const Complex m = 0.5 * (z[0] + z[1]);
  return CVec{m, m, z[2]};
}

CVec indicatrix_Rt(double t, const CVec& z) {
  require_unit_interval(t, "R_t");
  require_in(domain::IndicatrixE0{}, z, "R_t");
  return CVec{z[0], t * z[0], z[2]};
}

CVec indicatrix_proj12(const CVec& z) {
  require_in(domain::IndicatrixE0{}, z, "proj12");
  return CVec{z[0], z[1], 0.0};
}

// -- ball slices -------------------------------------------------------------

BallSliceRetraction::BallSliceRetraction(const retraction::AffineSlice& slice) {
  const std::size_t n = slice.point.dim();
  if (n == 0) throw SpecError("slice: empty point");
  if (slice.directions.size() >= n) {
    throw SpecError("slice: needs fewer directions than the ambient dimension");
  }
  for (const CVec& d : slice.directions) {
    require_dim(d, n, "slice direction");
    CVec v = d;
    for (const CVec& e : basis_) v -= e * inner(v, e);
    const double nv = norm(v);
    if (nv < 1e-10 * std::max(1.0, norm(d))) {
      throw SpecError("slice: directions are linearly dependent");
    }
    basis_.push_back(v * Complex(1.0 / nv));
  }
  center_ = slice.point;
  for (const CVec& e : basis_) center_ -= e * inner(center_, e);
  const double c2 = norm_sq(center_);
  if (!(c2 < 1.0)) throw SpecError("slice: affine subspace misses the unit ball");
  radius_ = std::sqrt(1.0 - c2);
}

CVec BallSliceRetraction::project(const CVec& v) const {
  CVec out(v.dim());
  for (const CVec& e : basis_) out += e * inner(v, e);
  return out;
}

CVec BallSliceRetraction::operator()(const CVec& w) const {
  if (norm_sq(center_) == 0.0) return project(w);
  return ball_moebius(center_, project(ball_moebius(center_, w)));
}

double BallSliceRetraction::min_coordinate_modulus(std::size_t j) const {
  // w_j = c_j + sum_k x_k e_kj with |x| <= radius: the minimum modulus is
  // |c_j| - radius * |(e_kj)_k|, clipped at 0.
  double spread = 0.0;
  for (const CVec& e : basis_) spread += std::norm(e[j]);
  return std::max(0.0, std::abs(center_[j]) - radius_ * std::sqrt(spread));
}

double BallSliceRetraction::distance_to_affine_span(const CVec& w) const {
  const CVec v = w - center_;
  return norm(v - project(v));
}

CVec ellipsoid_lifted_retraction(const retraction::EllipsoidLift& spec,
                                 const CVec& z) {
  return Retraction(spec)(z);
}

SymMat2 lifted_retraction_via_lambda(const retraction::LambdaLift& spec,
                                     const SymMat2& a) {
  return SymMat2::from_cvec(Retraction(spec)(a.to_cvec()));
}

// -- spec plumbing -------------------------------------------------------------

void validate(const RetractionSpec& spec) { Retraction r(spec); }

DomainDescriptor natural_domain(const RetractionSpec& spec) {
  return std::visit(
      Overloaded{
          [](const retraction::BidiscRa&) -> DomainDescriptor { return domain::Polydisc{2}; },
          [](const retraction::BidiscRat&) -> DomainDescriptor { return domain::Polydisc{2}; },
          [](const retraction::LieEven& l) -> DomainDescriptor {
            return domain::LieBall{2 * l.n};
          },
          [](const retraction::TetraRoyal&) -> DomainDescriptor { return domain::Tetrablock{}; },
          [](const retraction::TetraSym&) -> DomainDescriptor { return domain::Tetrablock{}; },
          [](const retraction::IndicatrixProj12&) -> DomainDescriptor {
            return domain::IndicatrixE0{};
          },
          [](const retraction::IndicatrixRt&) -> DomainDescriptor {
            return domain::IndicatrixE0{};
          },
          [](const retraction::EllipsoidLift& e) -> DomainDescriptor {
            const bool all_one =
                std::all_of(e.p.begin(), e.p.end(), [](int pj) { return pj == 1; });
            if (all_one) return domain::Ball{static_cast<int>(e.p.size())};
            return domain::Ellipsoid{e.p};
          },
          [](const retraction::LambdaLift&) -> DomainDescriptor { return domain::RIII2{}; },
          [](const retraction::Linear3&) -> DomainDescriptor { return domain::IndicatrixE0{}; },
      },
      spec);
}

std::string name(const RetractionSpec& spec) {
  return std::visit(
      Overloaded{
          [](const retraction::BidiscRa& r) { return "BidiscRa(a=" + fmt_complex(r.a) + ")"; },
          [](const retraction::BidiscRat& r) {
            return "BidiscRat(a=" + fmt_complex(r.a) + ",t=" + std::to_string(r.t) + ")";
          },
          [](const retraction::LieEven& r) { return "LieEven(n=" + std::to_string(r.n) + ")"; },
          [](const retraction::TetraRoyal&) { return std::string("TetraRoyal"); },
          [](const retraction::TetraSym&) { return std::string("TetraSym"); },
          [](const retraction::IndicatrixProj12&) { return std::string("IndicatrixProj12"); },
          [](const retraction::IndicatrixRt& r) {
            return "IndicatrixRt(t=" + std::to_string(r.t) + ")";
          },
          [](const retraction::EllipsoidLift& e) {
            std::string s = "EllipsoidLift(p=";
            for (std::size_t i = 0; i < e.p.size(); ++i) {
              if (i) s += ',';
              s += std::to_string(e.p[i]);
            }
            return s + ")";
          },
          [](const retraction::LambdaLift& l) {
            return std::string(std::holds_alternative<retraction::ConstantInner>(l.inner)
                                   ? "LambdaLift(constant)"
                                   : "LambdaLift(identity-on-patch)");
          },
          [](const retraction::Linear3&) { return std::string("Linear3"); },
      },
      spec);
}

// -- Retraction ----------------------------------------------------------------

struct Retraction::Impl {
  RetractionSpec spec;
  DomainDescriptor domain;
  // EllipsoidLift
  std::vector<int> p;
  std::unique_ptr<BallSliceRetraction> slice;
  RootBasepoint basepoint;
  // LambdaLift
  std::unique_ptr<LambdaSheet> sheet;
  SymMat2 constant_image;
};

Retraction::Retraction(RetractionSpec spec) {
  auto impl = std::make_shared<Impl>();
  impl->domain = natural_domain(spec);
  std::visit(
      Overloaded{
          [](const retraction::BidiscRa& r) {
            if (!(std::abs(r.a) <= 1.0 + kUnimodularTol)) {
              throw SpecError("BidiscRa: |a| must be <= 1");
            }
          },
          [](const retraction::BidiscRat& r) {
            if (std::abs(std::abs(r.a) - 1.0) > kUnimodularTol) {
              throw SpecError("BidiscRat: |a| must equal 1 (R o R scales by t + (1 - t)|a|^2)");
            }
            require_unit_interval(r.t, "BidiscRat");
          },
          [](const retraction::LieEven& r) {
            if (r.n < 2) throw SpecError("LieEven: n must be >= 2");
          },
          [](const retraction::IndicatrixRt& r) { require_unit_interval(r.t, "IndicatrixRt"); },
          [&](const retraction::EllipsoidLift& e) {
            if (e.p.empty()) throw SpecError("EllipsoidLift: empty exponent list");
            for (int pj : e.p) {
              if (pj < 1) throw SpecError("EllipsoidLift: exponents must be positive");
            }
            require_dim(e.slice.point, e.p.size(), "EllipsoidLift slice");
            impl->p = e.p;
            impl->slice = std::make_unique<BallSliceRetraction>(e.slice);
            for (std::size_t j = 0; j < e.p.size(); ++j) {
              if (e.p[j] >= 2 && impl->slice->min_coordinate_modulus(j) <= kLocusMargin) {
                throw SpecError("EllipsoidLift: slice meets the locus set of the power map");
              }
            }
            if (e.basepoint.base.empty()) {
              const CVec& c = impl->slice->center();
              CVec root(c.dim());
              for (std::size_t j = 0; j < c.dim(); ++j) {
                root[j] = std::pow(c[j], 1.0 / static_cast<double>(e.p[j]));
              }
              impl->basepoint = RootBasepoint{c, root};
            } else {
              impl->basepoint = e.basepoint;
            }
            validate_root_basepoint(impl->basepoint, impl->p);
            if (impl->slice->distance_to_affine_span(impl->basepoint.base) > 1e-12 ||
                !(norm_sq(impl->basepoint.base) < 1.0)) {
              throw SpecError("EllipsoidLift: basepoint is not in the slice");
            }
          },
          [&](const retraction::LambdaLift& l) {
            if (!in_rIII2(l.basepoint)) throw SpecError("LambdaLift: basepoint outside R_III(2)");
            impl->sheet = std::make_unique<LambdaSheet>(l.basepoint);
            const CVec x0 = lambda(l.basepoint);
            std::visit(Overloaded{
                           [&](const retraction::ConstantInner& c) {
                             require_dim(c.point, 3, "ConstantInner");
                             if (!in_tetrablock(c.point)) {
                               throw SpecError("ConstantInner: point outside the tetrablock");
                             }
                             if (std::abs(c.point[0] * c.point[1] - c.point[2]) < 1e-8) {
                               throw SpecError("ConstantInner: point on the royal variety");
                             }
                             impl->constant_image = impl->sheet->lift(c.point);
                           },
                           [&](const retraction::IdentityOnPatch& patch) {
                             validate_patch(patch);
                             if (!(distance(x0, patch.center) < patch.radius)) {
                               throw SpecError("IdentityOnPatch: Lambda(basepoint) not in the patch");
                             }
                           },
                       },
                       l.inner);
          },
          [](const retraction::Linear3& m) {
            for (const auto& c : m.m) {
              if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
                throw SpecError("Linear3: non-finite entry");
              }
            }
            if (idempotence_defect(m.m) > kIdempotentTol) {
              throw SpecError("Linear3: matrix is not idempotent");
            }
          },
          [](const auto&) {},
      },
      spec);
  impl->spec = std::move(spec);
  impl_ = std::move(impl);
}

const RetractionSpec& Retraction::spec() const noexcept { return impl_->spec; }
const DomainDescriptor& Retraction::domain() const noexcept { return impl_->domain; }

CVec Retraction::operator()(const CVec& z) const {
  const Impl& im = *impl_;
  return std::visit(
      Overloaded{
          [&](const retraction::BidiscRa& r) { return bidisc_Ra(r.a, z); },
          [&](const retraction::BidiscRat& r) { return bidisc_Rat(r.a, r.t, z); },
          [&](const retraction::LieEven& r) {
            require_in(domain::LieBall{2 * r.n}, z, "LieEven");
            return lie_even_retraction(z);
          },
          [&](const retraction::TetraRoyal&) { return tetra_royal(z); },
          [&](const retraction::TetraSym&) { return tetra_sym(z); },
          [&](const retraction::IndicatrixProj12&) { return indicatrix_proj12(z); },
          [&](const retraction::IndicatrixRt& r) { return indicatrix_Rt(r.t, z); },
          [&](const retraction::EllipsoidLift&) {
            require_in(im.domain, z, "EllipsoidLift");
            const CVec w = ellipsoid_power(z, im.p);
            // pi(z) may graze the sphere through rounding; pull it back in.
            const double nw = norm(w);
            const CVec w_in = nw < 1.0 ? w : w * Complex((1.0 - 1e-15) / nw);
            return ellipsoid_root((*im.slice)(w_in), im.p, im.basepoint);
          },
          [&](const retraction::LambdaLift& l) {
            require_in(im.domain, z, "LambdaLift");
            return std::visit(
                Overloaded{
                    [&](const retraction::ConstantInner&) { return im.constant_image.to_cvec(); },
                    [&](const retraction::IdentityOnPatch& patch) {
                      const CVec x = lambda(SymMat2::from_cvec(z));
                      const double dist = distance(x, patch.center);
                      if (dist > patch.radius * (1.0 + 1e-12)) {
                        throw DomainError("LambdaLift: Lambda(A) outside the patch",
                                          dist / patch.radius);
                      }
                      return im.sheet->lift(x).to_cvec();
                    },
                },
                l.inner);
          },
          [&](const retraction::Linear3& m) {
            require_in(im.domain, z, "Linear3");
            return apply_linear3(m.m, z);
          },
      },
      im.spec);
}

std::vector<CVec> Retraction::sample_domain(std::size_t count,
                                            std::uint64_t seed) const {
  if (const auto* l = std::get_if<retraction::LambdaLift>(&impl_->spec)) {
    if (const auto* patch = std::get_if<retraction::IdentityOnPatch>(&l->inner)) {
      Sampler rng(seed);
      std::vector<CVec> out;
      out.reserve(count);
      for (std::size_t k = 0; k < count; ++k) {
        const CVec x = patch->center + rng.ball(3) * Complex(0.999 * patch->radius);
        const FiberResult fiber = lambda_fiber(x);
        out.push_back(fiber.points[rng.index(fiber.points.size())].to_cvec());
      }
      return out;
    }
  }
  return sample(impl_->domain, count, seed);
}

// -- verification -------------------------------------------------------------

namespace {

struct Accumulators {
  ViolationMax image, idempotence, fixing;
  std::vector<SampleRecord> records;
};

double measure(const auto& fn) {
  try {
    return fn();
  } catch (const Error&) {
    return std::numeric_limits<double>::infinity();
  }
}

template <class Body>
void run_chunks(std::size_t count, unsigned workers, std::vector<Accumulators>& parts,
                Body body) {
  const unsigned w = std::max(1U, std::min<unsigned>(workers, static_cast<unsigned>(
                                                                  std::max<std::size_t>(count, 1))));
  parts.assign(w, Accumulators{});
  auto run = [&](unsigned part) {
    const std::size_t lo = count * part / w;
    const std::size_t hi = count * (part + 1) / w;
    for (std::size_t i = lo; i < hi; ++i) body(i, parts[part]);
  };
  if (w == 1) {
    run(0);
    return;
  }
  std::vector<std::thread> threads;
  threads.reserve(w);
  for (unsigned part = 0; part < w; ++part) threads.emplace_back(run, part);
  for (auto& t : threads) t.join();
}

}  // namespace

VerificationReport verify_retraction(const RetractionSpec& spec,
                                     const DomainDescriptor& domain,
                                     const VerifyOptions& options) {
  const Retraction retr(spec);
  if (name(retr.domain()) != name(domain)) {
    throw SpecError("verify_retraction: " + name(spec) + " acts on " +
                    name(retr.domain()) + ", not " + name(domain));
  }
  const std::vector<CVec> zs = retr.sample_domain(options.samples, options.seed);
  const std::vector<CVec> vs =
      retr.sample_domain(options.samples, options.seed ^ kImageSeedSalt);
  const bool keep = options.records != nullptr;

  std::vector<Accumulators> parts;
  run_chunks(zs.size(), options.workers, parts, [&](std::size_t i, Accumulators& acc) {
    const CVec& z = zs[i];
    CVec rz;
    const double image = measure([&] {
      rz = retr(z);
      return std::max(0.0, level(domain, rz) - 1.0);
    });
    const double idem = measure([&] {
      if (rz.empty()) rz = retr(z);
      return distance(retr(rz), rz);
    });
    const double fix = measure([&] {
      const CVec v = retr(vs[i]);
      return distance(retr(v), v);
    });
    acc.image.add(image, z);
    acc.idempotence.add(idem, z);
    acc.fixing.add(fix, vs[i]);
    if (keep) {
      acc.records.push_back({"image", i, image});
      acc.records.push_back({"idempotence", i, idem});
      acc.records.push_back({"fixing", i, fix});
    }
  });

  Accumulators total;
  for (auto& part : parts) {
    total.image.merge(part.image);
    total.idempotence.merge(part.idempotence);
    total.fixing.merge(part.fixing);
    if (keep) {
      options.records->insert(options.records->end(), part.records.begin(), part.records.end());
    }
  }
  VerificationReport report;
  report.checks.push_back(total.image.finish("image", options.tol));
  report.checks.push_back(total.idempotence.finish("idempotence", options.tol));
  report.checks.push_back(total.fixing.finish("fixing", options.tol));
  return report;
}

VerificationReport compose_retracts_check(const RetractionSpec& r1,
                                          const RetractionSpec& r2,
                                          const CVec& common_point,
                                          const VerifyOptions& options) {
  const Retraction a(r1);
  const Retraction b(r2);
  if (name(a.domain()) != name(b.domain())) {
    throw SpecError("compose_retracts_check: retractions act on different domains");
  }
  if (distance(a(common_point), common_point) > options.tol ||
      distance(b(common_point), common_point) > options.tol) {
    throw SpecError("compose_retracts_check: the supplied point is not fixed by both");
  }
  const std::vector<CVec> zs = a.sample_domain(options.samples, options.seed);
  ViolationMax first, second;
  for (const CVec& z : zs) {
    first.add(measure([&] {
                const CVec v = a(z);
                return distance(a(b(v)), v);
              }),
              z);
    second.add(measure([&] {
                 const CVec u = b(z);
                 return distance(b(a(u)), u);
               }),
               z);
  }
  VerificationReport report;
  report.checks.push_back(first.finish("R1 o R2 = id on image of R1", options.tol));
  report.checks.push_back(second.finish("R2 o R1 = id on image of R2", options.tol));
  return report;
}

VerificationReport necessary_identity_check(const RetractionSpec& spec,
                                            std::span<const Complex> omegas,
                                            const VerifyOptions& options) {
  const Retraction retr(spec);
  if (!std::holds_alternative<domain::Tetrablock>(retr.domain())) {
    throw SpecError("necessary_identity_check: needs a retraction of the tetrablock");
  }
  const std::vector<CVec> zs = retr.sample_domain(options.samples, options.seed);
  VerificationReport report;
  for (std::size_t k = 0; k < omegas.size(); ++k) {
    const Complex omega = omegas[k];
    ViolationMax acc;
    for (const CVec& z : zs) {
      acc.add(measure([&] { return std::abs(psi_omega(omega, retr(z)) - psi_omega(omega, z)); }),
              z);
    }
    report.checks.push_back(acc.finish("psi_omega o R = psi_omega, omega=" + fmt_complex(omega),
                                       options.tol));
  }
  return report;
}

}  // namespace lretract
