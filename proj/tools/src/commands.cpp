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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <set>

#include "lretract/domains.hpp"
#include "lretract/errors.hpp"
#include "lretract/metrics.hpp"
#include "lretract/sampling.hpp"
#include "lretract/verify.hpp"
#include "lretract_cli/cli.hpp"

namespace lretract::cli {
namespace {

// Thresholds for the scalar indicatrix battery.
constexpr double kHoldsTol = 1e-9;
constexpr double kDetectTol = 1e-3;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Parameter object access that rejects keys nobody asked for.
class Params {
 public:
  Params(const Json& j, std::string what) : j_(j), what_(std::move(what)) {
    if (!j_.is_object()) throw UsageError(what_ + ": parameters must be an object");
  }

  bool has(const std::string& key) {
    seen_.insert(key);
    return j_.contains(key);
  }
  const Json& at(const std::string& key) {
    if (!has(key)) throw UsageError(what_ + ": missing parameter '" + key + "'");
    return j_.at(key);
  }
  std::string string(const std::string& key) {
    const Json& v = at(key);
    if (!v.is_string()) throw UsageError(what_ + "." + key + ": expected a string");
    return v.get<std::string>();
  }
  long long integer(const std::string& key, long long fallback, long long lo) {
    if (!has(key)) return fallback;
    const long long v = integer_from(j_.at(key), what_ + "." + key);
    if (v < lo) throw UsageError(what_ + "." + key + ": must be >= " + std::to_string(lo));
    return v;
  }
  double number(const std::string& key, double fallback) {
    return has(key) ? number_from(j_.at(key), what_ + "." + key) : fallback;
  }
  void finish() const {
    for (const auto& [key, value] : j_.items()) {
      if (!seen_.count(key)) throw UsageError(what_ + ": unknown parameter '" + key + "'");
    }
  }

 private:
  const Json& j_;
  std::string what_;
  std::set<std::string> seen_;
};

Json header(const RunManifest& m) {
  Json j;
  j["subcommand"] = m.subcommand;
  j["manifest"] = to_json(m);
  return j;
}

Outcome cmd_membership(const RunManifest& m) {
  Params p(m.parameters, "membership");
  const DomainDescriptor d = parse_domain(p.string("domain"));
  const CVec z = cvec_from(p.at("point"), "membership.point");
  p.finish();
  if (z.dim() != dimension(d)) {
    throw UsageError("membership: point has dimension " + std::to_string(z.dim()) + ", " +
                     name(d) + " needs " + std::to_string(dimension(d)));
  }
  const bool member = contains(d, z);
  Outcome o;
  o.report = header(m);
  o.report["domain"] = name(d);
  o.report["point"] = to_json(z);
  o.report["member"] = member;
  o.report["gauge_or_witness"] = level(d, z);
  o.exit_code = member ? kPass : kNegative;
  o.table = {{"domain", "member", "level"}, {name(d), member ? "1" : "0", fmt(level(d, z))}};
  return o;
}

Outcome cmd_verify(const RunManifest& m) {
  Params p(m.parameters, "verify-retraction");
  const RetractionSpec spec = retraction_from_json(p.at("retraction"));
  validate(spec);
  const DomainDescriptor d = p.has("domain") ? parse_domain(p.string("domain")) : natural_domain(spec);
  VerifyOptions opts;
  opts.samples = m.samples;
  opts.seed = m.seed;
  opts.tol = m.tolerance;
  opts.workers = static_cast<unsigned>(p.integer("workers", 1, 1));
  std::vector<Complex> omegas;
  if (p.has("omegas")) {
    const CVec w = cvec_from(p.at("omegas"), "verify-retraction.omegas");
    omegas.assign(w.begin(), w.end());
  }
  std::optional<RetractionSpec> other;
  CVec common;
  if (p.has("compose_with")) {
    other = retraction_from_json(p.at("compose_with"));
    common = cvec_from(p.at("common_point"), "verify-retraction.common_point");
  }
  p.finish();

  std::vector<SampleRecord> records;
  opts.records = &records;
  const VerificationReport report = verify_retraction(spec, d, opts);

  Outcome o;
  o.report = header(m);
  o.report["retraction"] = name(spec);
  o.report["spec"] = to_json(spec);
  o.report["domain"] = name(d);
  bool passed = report.passed();
  o.report["checks"] = to_json(report);
  if (other) {
    VerifyOptions copts = opts;
    copts.records = nullptr;
    const VerificationReport c = compose_retracts_check(spec, *other, common, copts);
    o.report["composition"] = {{"with", name(*other)}, {"checks", to_json(c)}};
    passed = passed && c.passed();
  }
  if (!omegas.empty()) {
    VerifyOptions nopts = opts;
    nopts.records = nullptr;
    const VerificationReport n = necessary_identity_check(spec, omegas, nopts);
    // Reported per omega; not part of the verdict.
    o.report["necessary_identity"] = to_json(n);
  }
  o.report["passed"] = passed;
  o.exit_code = passed ? kPass : kNegative;
  o.table.push_back({"check", "index", "violation"});
  for (const auto& r : records) o.table.push_back({r.check, std::to_string(r.index), fmt(r.violation)});
  return o;
}

bool in_characterisation(Complex alpha, Complex beta) {
  return beta == Complex(0.0) && alpha.imag() == 0.0 && alpha.real() >= 0.0 && alpha.real() <= 1.0;
}

// Seeded cases outside {alpha in [0, 1], beta = 0}, alternating between
// alpha off the segment and beta != 0.
std::vector<std::pair<Complex, Complex>> outside_cases(std::size_t count, std::uint64_t seed) {
  Sampler rng(seed);
  std::vector<std::pair<Complex, Complex>> out;
  while (out.size() < count) {
    if (out.size() % 2 == 0) {
      const Complex alpha{rng.uniform(-1.5, 2.5), rng.uniform(-1.5, 1.5)};
      const double dx = std::max({0.0, -alpha.real(), alpha.real() - 1.0});
      if (std::hypot(dx, alpha.imag()) < 0.05) continue;
      out.emplace_back(alpha, 0.0);
    } else {
      const double a = rng.uniform();
      out.emplace_back(Complex(a, 0.0), std::polar(rng.uniform(0.05, 0.5), rng.uniform(0.0, 2.0 * std::numbers::pi)));
    }
  }
  return out;
}

Json lemma41_case(Complex alpha, Complex beta, int grid, std::vector<std::vector<std::string>>& table,
                  bool& consistent) {
  const Lemma41Result r = lemma41_check(alpha, beta, grid);
  const bool expected = in_characterisation(alpha, beta);
  const bool holds = r.max_violation <= kHoldsTol;
  consistent = expected ? holds : r.max_violation > kDetectTol;
  table.push_back({fmt(alpha.real()), fmt(alpha.imag()), fmt(beta.real()), fmt(beta.imag()),
                   fmt(r.max_violation), expected ? "1" : "0", consistent ? "1" : "0"});
  Json j;
  j["alpha"] = to_json(alpha);
  j["beta"] = to_json(beta);
  j["max_violation"] = r.max_violation;
  j["witness"] = to_json(r.witness);
  j["expected_to_hold"] = expected;
  j["consistent"] = consistent;
  return j;
}

Outcome suite_lemma41(const RunManifest& m, Params& p) {
  const int grid = static_cast<int>(p.integer("grid", 64, 64));
  const auto cases = static_cast<std::size_t>(p.integer("cases", 100, 0));
  const bool custom = p.has("alpha");
  Complex alpha, beta;
  if (custom) {
    alpha = complex_from(p.at("alpha"), "lemma41.alpha");
    beta = p.has("beta") ? complex_from(p.at("beta"), "lemma41.beta") : Complex(0.0);
  }
  p.finish();
  Outcome o;
  o.report = header(m);
  o.report["suite"] = "lemma41";
  o.report["grid"] = grid;
  o.table.push_back({"alpha_re", "alpha_im", "beta_re", "beta_im", "max_violation", "expected_to_hold",
                     "consistent"});
  bool all = true;
  Json list = Json::array();
  if (custom) {
    bool ok = false;
    list.push_back(lemma41_case(alpha, beta, grid, o.table, ok));
    all = ok;
  } else {
    double inside_max = -1.0, outside_min = 1e300;
    for (int k = 0; k <= 100; ++k) {
      bool ok = false;
      Json c = lemma41_case(Complex(k / 100.0, 0.0), 0.0, grid, o.table, ok);
      inside_max = std::max(inside_max, c["max_violation"].get<double>());
      all = all && ok;
      list.push_back(std::move(c));
    }
    for (const auto& [a, b] : outside_cases(cases, m.seed)) {
      bool ok = false;
      Json c = lemma41_case(a, b, grid, o.table, ok);
      outside_min = std::min(outside_min, c["max_violation"].get<double>());
      all = all && ok;
      list.push_back(std::move(c));
    }
    o.report["inside"] = {{"cases", 101}, {"max_violation", inside_max}, {"threshold", kHoldsTol}};
    o.report["outside"] = {{"cases", cases}, {"min_violation", cases ? outside_min : 0.0},
                           {"threshold", kDetectTol}};
  }
  o.report["consistent"] = all;
  o.report["cases"] = std::move(list);
  o.exit_code = all ? kPass : kNegative;
  return o;
}

Outcome suite_l3(const RunManifest& m, Params& p) {
  const int grid = static_cast<int>(p.integer("grid", 50, 2));
  const bool custom = p.has("a");
  Complex a;
  double r = 0.0;
  if (custom) {
    a = complex_from(p.at("a"), "l3-obstruction.a");
    r = p.number("r", 0.5);
  }
  p.finish();
  Outcome o;
  o.report = header(m);
  o.report["suite"] = "l3-obstruction";
  o.table.push_back({"abs_a", "r", "value", "closed_form"});
  const auto closed = [](double ma, double rr) {
    return rr * rr * (1.0 - rr * rr) * (1.0 - ma) * (1.0 - ma);
  };
  double max_err = 0.0, min_value = 1e300;
  const auto eval = [&](Complex aa, double rr) {
    const double v = l3_obstruction(aa, rr);
    const double c = closed(std::abs(aa), rr);
    max_err = std::max(max_err, std::abs(v - c));
    min_value = std::min(min_value, v);
    o.table.push_back({fmt(std::abs(aa)), fmt(rr), fmt(v), fmt(c)});
  };
  if (custom) {
    eval(a, r);
    o.report["a"] = to_json(a);
    o.report["r"] = r;
  } else {
    for (int i = 0; i < grid; ++i) {
      const double ma = 0.95 * i / (grid - 1);
      const Complex aa = std::polar(ma, 2.0 * std::numbers::pi * i / grid);
      for (int k = 0; k < grid; ++k) eval(aa, 0.05 + 0.9 * k / (grid - 1));
    }
    o.report["grid"] = grid;
  }
  const bool ok = max_err <= 1e-12 && min_value > 0.0;
  o.report["max_closed_form_error"] = max_err;
  o.report["min_value"] = min_value;
  o.report["consistent"] = ok;
  o.exit_code = ok ? kPass : kNegative;
  return o;
}

PlaneSpec plane_from(const Json& j) {
  if (!j.is_object() || !j.contains("u") || !j.contains("v") || j.size() != 2) {
    throw UsageError("linret-classify.planes: expected {\"u\": [...], \"v\": [...]}");
  }
  PlaneSpec s{cvec_from(j["u"], "plane.u"), cvec_from(j["v"], "plane.v")};
  validate(s);
  return s;
}

const char* status_name(Feasibility f) {
  switch (f) {
    case Feasibility::kFeasible:
      return "feasible";
    case Feasibility::kInfeasible:
      return "infeasible";
    default:
      return "inconclusive";
  }
}

Outcome suite_linret(const RunManifest& m, Params& p) {
  const auto budget = static_cast<std::size_t>(p.integer("budget", 20000, 64));
  const double tol = p.number("feasibility_tol", 1e-6);
  std::vector<PlaneSpec> planes;
  if (p.has("planes")) {
    const Json& list = p.at("planes");
    if (!list.is_array()) throw UsageError("linret-classify.planes: expected an array");
    for (const auto& e : list) planes.push_back(plane_from(e));
  } else {
    const auto generic = static_cast<std::size_t>(p.integer("generic", 20, 0));
    planes.push_back({CVec{1.0, 0.0, 0.0}, CVec{0.0, 1.0, 0.0}});
    for (double rad : {0.0, 0.5, 1.0}) {
      for (int k = 0; k < (rad == 0.0 ? 1 : 4); ++k) {
        const Complex alpha = std::polar(rad, 2.0 * std::numbers::pi * k / 4.0 + 0.3);
        planes.push_back({CVec{0.0, 0.0, 1.0}, CVec{1.0, alpha, 0.0}});
      }
    }
    Sampler rng(m.seed);
    for (std::size_t k = 0; k < generic; ++k) {
      planes.push_back({CVec{rng.complex_normal(), rng.complex_normal(), rng.complex_normal()},
                        CVec{rng.complex_normal(), rng.complex_normal(), rng.complex_normal()}});
    }
  }
  p.finish();
  Outcome o;
  o.report = header(m);
  o.report["suite"] = "linret-classify";
  o.report["budget"] = budget;
  o.table.push_back({"plane", "admissible", "status", "norm", "lipschitz"});
  Json list = Json::array();
  bool all = true;
  for (std::size_t i = 0; i < planes.size(); ++i) {
    const bool admissible = lemma_linret_admissible(planes[i]);
    const FeasibilityResult f = linear_retract_feasibility(planes[i], tol, budget);
    const bool consistent = admissible ? f.status == Feasibility::kFeasible
                                       : f.status == Feasibility::kInfeasible;
    all = all && consistent;
    Json best = Json::array();
    for (Complex c : f.best.m) best.push_back(to_json(c));
    list.push_back({{"u", to_json(planes[i].u)},
                    {"v", to_json(planes[i].v)},
                    {"admissible", admissible},
                    {"status", status_name(f.status)},
                    {"norm", f.norm},
                    {"lipschitz", f.lipschitz},
                    {"evaluations", f.evaluations},
                    {"best_map", best},
                    {"consistent", consistent}});
    o.table.push_back({std::to_string(i), admissible ? "1" : "0", status_name(f.status), fmt(f.norm),
                       fmt(f.lipschitz)});
  }
  o.report["consistent"] = all;
  o.report["planes"] = std::move(list);
  o.exit_code = all ? kPass : kNegative;
  return o;
}

Outcome suite_remfzero(const RunManifest& m, Params& p) {
  std::vector<double> eps{0.1, 0.01, 0.001};
  if (p.has("eps")) {
    const Json& e = p.at("eps");
    if (!e.is_array() || e.empty()) throw UsageError("remfzero.eps: expected a non-empty array");
    eps.clear();
    for (const auto& v : e) eps.push_back(number_from(v, "remfzero.eps"));
  }
  Complex constant{0.0};
  if (p.has("f_constant")) constant = complex_from(p.at("f_constant"), "remfzero.f_constant");
  const auto shell = static_cast<std::size_t>(p.integer("shell_samples", 256, 1));
  p.finish();
  const auto f = [constant](const CVec&) { return constant; };
  const RemfzeroResult r = remfzero_decay_check(eps, f, shell, m.seed);
  Outcome o;
  o.report = header(m);
  o.report["suite"] = "remfzero";
  o.report["f_constant"] = to_json(constant);
  Json shells = Json::array();
  o.table.push_back({"eps", "bound", "sup_f"});
  for (std::size_t i = 0; i < r.eps.size(); ++i) {
    shells.push_back({{"eps", r.eps[i]}, {"bound", r.bounds[i]}, {"sup_f", r.sup_f[i]}});
    o.table.push_back({fmt(r.eps[i]), fmt(r.bounds[i]), fmt(r.sup_f[i])});
  }
  o.report["shells"] = std::move(shells);
  o.report["checks"] = to_json(r.report);
  o.report["consistent"] = r.report.passed();
  o.exit_code = r.report.passed() ? kPass : kNegative;
  return o;
}

Outcome cmd_lemma_suite(const RunManifest& m) {
  Params p(m.parameters, "lemma-suite");
  const std::string suite = p.string("suite");
  if (suite == "lemma41") return suite_lemma41(m, p);
  if (suite == "l3-obstruction") return suite_l3(m, p);
  if (suite == "linret-classify") return suite_linret(m, p);
  if (suite == "remfzero") return suite_remfzero(m, p);
  throw UsageError("lemma-suite: unknown suite '" + suite + "'");
}

Outcome cmd_metric(const RunManifest& m) {
  Params p(m.parameters, "metric");
  const DomainDescriptor d = parse_domain(p.string("domain"));
  const CVec z = cvec_from(p.at("z"), "metric.z");
  const CVec w = cvec_from(p.at("w"), "metric.w");
  const int degree = static_cast<int>(p.integer("degree", 4, 1));
  const auto budget = static_cast<std::size_t>(p.integer("budget", 4000, 0));
  const int family = static_cast<int>(p.integer("family_size", 64, 1));
  p.finish();
  if (z.dim() != dimension(d) || w.dim() != dimension(d)) {
    throw UsageError("metric: points must have dimension " + std::to_string(dimension(d)));
  }
  const double lower = carath_lower(d, z, w, family);
  const LempertResult up = lempert_search(d, z, w, degree, budget);
  const double gap = up.value - lower;
  Outcome o;
  o.report = header(m);
  o.report["domain"] = name(d);
  o.report["z"] = to_json(z);
  o.report["w"] = to_json(w);
  o.report["lower"] = lower;
  o.report["upper"] = up.value;
  o.report["gap"] = gap;
  o.report["budget"] = budget;
  o.report["degree"] = degree;
  o.report["family_size"] = family;
  o.report["evaluations"] = up.evaluations;
  o.report["diagnostics"] = up.diagnostics;
  o.exit_code = gap <= m.tolerance ? kPass : kNegative;
  o.table = {{"lower", "upper", "gap"}, {fmt(lower), fmt(up.value), fmt(gap)}};
  return o;
}

}  // namespace

Outcome execute(const RunManifest& m) {
  if (m.subcommand == "membership") return cmd_membership(m);
  if (m.subcommand == "verify-retraction") return cmd_verify(m);
  if (m.subcommand == "lemma-suite") return cmd_lemma_suite(m);
  if (m.subcommand == "metric") return cmd_metric(m);
  throw UsageError("unknown subcommand '" + m.subcommand + "'");
}

}  // namespace lretract::cli
