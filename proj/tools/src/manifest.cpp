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
#include <initializer_list>
#include <string_view>

#include "lretract_cli/cli.hpp"

namespace lretract::cli {
namespace {

void check_keys(const Json& j, std::initializer_list<std::string_view> allowed,
                const std::string& what) {
  if (!j.is_object()) throw UsageError(what + ": expected an object");
  for (const auto& [key, value] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw UsageError(what + ": unknown key '" + key + "'");
    }
  }
}

const Json& required(const Json& j, const char* key, const std::string& what) {
  if (!j.contains(key)) throw UsageError(what + ": missing '" + key + "'");
  return j.at(key);
}

std::vector<int> int_list(const Json& j, const std::string& what) {
  if (!j.is_array() || j.empty()) throw UsageError(what + ": expected a non-empty array");
  std::vector<int> out;
  for (const auto& e : j) out.push_back(static_cast<int>(integer_from(e, what)));
  return out;
}

}  // namespace

Json to_json(const RunManifest& m) {
  Json j;
  j["subcommand"] = m.subcommand;
  j["parameters"] = m.parameters;
  j["seed"] = m.seed;
  j["tolerance"] = m.tolerance;
  j["samples"] = m.samples;
  j["output"] = m.output;
  return j;
}

RunManifest manifest_from_json(const Json& j) {
  check_keys(j, {"subcommand", "parameters", "seed", "tolerance", "samples", "output"},
             "manifest");
  RunManifest m;
  const Json& sub = required(j, "subcommand", "manifest");
  if (!sub.is_string()) throw UsageError("manifest: 'subcommand' must be a string");
  m.subcommand = sub.get<std::string>();
  if (j.contains("parameters")) {
    if (!j["parameters"].is_object()) throw UsageError("manifest: 'parameters' must be an object");
    m.parameters = j["parameters"];
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned() && !(j["seed"].is_number_integer() && j["seed"] == 0)) {
      throw UsageError("manifest: 'seed' must be a non-negative integer");
    }
    m.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("tolerance")) {
    m.tolerance = number_from(j["tolerance"], "manifest.tolerance");
    if (!(m.tolerance >= 0.0)) throw UsageError("manifest: 'tolerance' must be >= 0");
  }
  if (j.contains("samples")) {
    if (!j["samples"].is_number_unsigned()) {
      throw UsageError("manifest: 'samples' must be a non-negative integer");
    }
    m.samples = j["samples"].get<std::uint64_t>();
  }
  if (j.contains("output")) {
    if (!j["output"].is_string()) throw UsageError("manifest: 'output' must be a string");
    m.output = j["output"].get<std::string>();
  }
  return m;
}

RetractionSpec retraction_from_json(const Json& j) {
  const std::string what = "retraction";
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string()) {
    throw UsageError(what + ": expected an object with a string 'type'");
  }
  const std::string type = j["type"].get<std::string>();
  const std::string ctx = what + " " + type;
  if (type == "BidiscRa") {
    check_keys(j, {"type", "a"}, ctx);
    return retraction::BidiscRa{complex_from(required(j, "a", ctx), ctx + ".a")};
  }
  if (type == "BidiscRat") {
    check_keys(j, {"type", "a", "t"}, ctx);
    return retraction::BidiscRat{complex_from(required(j, "a", ctx), ctx + ".a"),
                                 number_from(required(j, "t", ctx), ctx + ".t")};
  }
  if (type == "LieEven") {
    check_keys(j, {"type", "n"}, ctx);
    return retraction::LieEven{static_cast<int>(integer_from(required(j, "n", ctx), ctx + ".n"))};
  }
  if (type == "TetraRoyal") {
    check_keys(j, {"type"}, ctx);
    return retraction::TetraRoyal{};
  }
  if (type == "TetraSym") {
    check_keys(j, {"type"}, ctx);
    return retraction::TetraSym{};
  }
  if (type == "IndicatrixProj12") {
    check_keys(j, {"type"}, ctx);
    return retraction::IndicatrixProj12{};
  }
  if (type == "IndicatrixRt") {
    check_keys(j, {"type", "t"}, ctx);
    return retraction::IndicatrixRt{number_from(required(j, "t", ctx), ctx + ".t")};
  }
  if (type == "EllipsoidLift") {
    check_keys(j, {"type", "p", "point", "directions", "basepoint"}, ctx);
    retraction::EllipsoidLift e;
    e.p = int_list(required(j, "p", ctx), ctx + ".p");
    e.slice.point = cvec_from(required(j, "point", ctx), ctx + ".point");
    const Json& dirs = required(j, "directions", ctx);
    if (!dirs.is_array()) throw UsageError(ctx + ".directions: expected an array");
    for (const auto& d : dirs) e.slice.directions.push_back(cvec_from(d, ctx + ".directions"));
    if (j.contains("basepoint")) {
      const Json& bp = j["basepoint"];
      check_keys(bp, {"base", "root"}, ctx + ".basepoint");
      e.basepoint.base = cvec_from(required(bp, "base", ctx), ctx + ".basepoint.base");
      e.basepoint.root = cvec_from(required(bp, "root", ctx), ctx + ".basepoint.root");
    }
    return e;
  }
  if (type == "LambdaLift") {
    check_keys(j, {"type", "basepoint", "inner"}, ctx);
    retraction::LambdaLift l;
    const CVec a = cvec_from(required(j, "basepoint", ctx), ctx + ".basepoint");
    if (a.dim() != 3) throw UsageError(ctx + ".basepoint: expected [a11, a12, a22]");
    l.basepoint = SymMat2::from_cvec(a);
    const Json& inner = required(j, "inner", ctx);
    if (inner.is_object() && inner.contains("constant")) {
      check_keys(inner, {"constant"}, ctx + ".inner");
      l.inner = retraction::ConstantInner{cvec_from(inner["constant"], ctx + ".inner.constant")};
    } else {
      check_keys(inner, {"center", "radius"}, ctx + ".inner");
      l.inner = retraction::IdentityOnPatch{
          cvec_from(required(inner, "center", ctx), ctx + ".inner.center"),
          number_from(required(inner, "radius", ctx), ctx + ".inner.radius")};
    }
    return l;
  }
  if (type == "Linear3") {
    check_keys(j, {"type", "m"}, ctx);
    const CVec flat = cvec_from(required(j, "m", ctx), ctx + ".m");
    if (flat.dim() != 9) throw UsageError(ctx + ".m: expected 9 row-major entries");
    retraction::Linear3 m;
    std::copy(flat.begin(), flat.end(), m.m.begin());
    return m;
  }
  throw UsageError(what + ": unknown type '" + type + "'");
}

Json to_json(const RetractionSpec& spec) {
  return std::visit(
      [](const auto& r) -> Json {
        using T = std::decay_t<decltype(r)>;
        Json j;
        if constexpr (std::is_same_v<T, retraction::BidiscRa>) {
          j["type"] = "BidiscRa";
          j["a"] = to_json(r.a);
        } else if constexpr (std::is_same_v<T, retraction::BidiscRat>) {
          j["type"] = "BidiscRat";
          j["a"] = to_json(r.a);
          j["t"] = r.t;
        } else if constexpr (std::is_same_v<T, retraction::LieEven>) {
          j["type"] = "LieEven";
          j["n"] = r.n;
        } else if constexpr (std::is_same_v<T, retraction::TetraRoyal>) {
          j["type"] = "TetraRoyal";
        } else if constexpr (std::is_same_v<T, retraction::TetraSym>) {
          j["type"] = "TetraSym";
        } else if constexpr (std::is_same_v<T, retraction::IndicatrixProj12>) {
          j["type"] = "IndicatrixProj12";
        } else if constexpr (std::is_same_v<T, retraction::IndicatrixRt>) {
          j["type"] = "IndicatrixRt";
          j["t"] = r.t;
        } else if constexpr (std::is_same_v<T, retraction::EllipsoidLift>) {
          j["type"] = "EllipsoidLift";
          j["p"] = r.p;
          j["point"] = to_json(r.slice.point);
          Json dirs = Json::array();
          for (const auto& d : r.slice.directions) dirs.push_back(to_json(d));
          j["directions"] = dirs;
          if (!r.basepoint.base.empty()) {
            j["basepoint"] = {{"base", to_json(r.basepoint.base)},
                              {"root", to_json(r.basepoint.root)}};
          }
        } else if constexpr (std::is_same_v<T, retraction::LambdaLift>) {
          j["type"] = "LambdaLift";
          j["basepoint"] = to_json(r.basepoint.to_cvec());
          if (const auto* c = std::get_if<retraction::ConstantInner>(&r.inner)) {
            j["inner"] = {{"constant", to_json(c->point)}};
          } else {
            const auto& p = std::get<retraction::IdentityOnPatch>(r.inner);
            j["inner"] = {{"center", to_json(p.center)}, {"radius", p.radius}};
          }
        } else {
          j["type"] = "Linear3";
          Json m = Json::array();
          for (Complex c : r.m) m.push_back(to_json(c));
          j["m"] = m;
        }
        return j;
      },
      spec);
}

}  // namespace lretract::cli
