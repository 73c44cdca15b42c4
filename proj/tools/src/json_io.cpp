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

#include "lretract_cli/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace lretract::cli {
namespace {

void write_float(std::string& out, double v) {
  if (std::isnan(v)) {
    out += "\"nan\"";
  } else if (std::isinf(v)) {
    out += v > 0 ? "\"inf\"" : "\"-inf\"";
  } else {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
  }
}

bool is_scalar(const Json& j) { return !j.is_object() && !j.is_array(); }

void write(std::string& out, const Json& j, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(2 * depth), ' ');
  switch (j.type()) {
    case Json::value_t::number_float:
      write_float(out, j.get<double>());
      return;
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ",\n";
        first = false;
        out += pad + Json(key).dump() + ": ";
        write(out, value, depth + 1);
      }
      out += "\n" + close_pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      bool flat = true;
      for (const auto& e : j) {
        if (!is_scalar(e) && !(e.is_array() && std::all_of(e.begin(), e.end(), is_scalar))) {
          flat = false;
        }
      }
      if (flat) {
        // Scalars and [re, im] pairs stay on one line.
        out += "[";
        bool first = true;
        for (const auto& e : j) {
          if (!first) out += ", ";
          first = false;
          write(out, e, depth + 1);
        }
        out += "]";
        return;
      }
      out += "[\n";
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += ",\n";
        first = false;
        out += pad;
        write(out, e, depth + 1);
      }
      out += "\n" + close_pad + "]";
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

std::string dump(const Json& j) {
  std::string out;
  write(out, j, 0);
  out += "\n";
  return out;
}

Json to_json(Complex c) { return Json::array({c.real(), c.imag()}); }

Json to_json(const CVec& v) {
  Json out = Json::array();
  for (Complex c : v) out.push_back(to_json(c));
  return out;
}

Json to_json(const CheckResult& c) {
  Json j;
  j["name"] = c.name;
  j["passed"] = c.passed;
  j["max_violation"] = c.max_violation;
  j["tolerance"] = c.tolerance;
  j["samples"] = c.samples;
  j["witness"] = to_json(c.witness);
  return j;
}

Json to_json(const VerificationReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  return checks;
}

double number_from(const Json& j, const std::string& what) {
  if (!j.is_number()) throw UsageError(what + ": expected a number");
  return j.get<double>();
}

long long integer_from(const Json& j, const std::string& what) {
  if (!j.is_number_integer()) throw UsageError(what + ": expected an integer");
  return j.get<long long>();
}

Complex complex_from(const Json& j, const std::string& what) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw UsageError(what + ": expected a number or a [re, im] pair");
}

CVec cvec_from(const Json& j, const std::string& what) {
  if (!j.is_array() || j.empty()) throw UsageError(what + ": expected a non-empty array");
  CVec v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    v[i] = complex_from(j[i], what + "[" + std::to_string(i) + "]");
  }
  if (!v.all_finite()) throw UsageError(what + ": non-finite entry");
  return v;
}

Json parse(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError(what + ": " + e.what());
  }
}

}  // namespace lretract::cli
