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

#ifndef LRETRACT_CLI_JSON_IO_HPP_
#define LRETRACT_CLI_JSON_IO_HPP_

#include <stdexcept>
#include <string>

#include "json.hpp"
#include "lretract/report.hpp"
#include "lretract/types.hpp"

namespace lretract::cli {

using Json = nlohmann::ordered_json;

/// Malformed input (bad JSON shape, unknown key, unparseable number).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Pretty printer with insertion-ordered keys and %.17g floats. Non-finite
/// floats are written as the strings "inf", "-inf" and "nan". Arrays of
/// scalars stay on one line.
std::string dump(const Json& j);

Json to_json(Complex c);
Json to_json(const CVec& v);
Json to_json(const CheckResult& c);
Json to_json(const VerificationReport& r);

/// Accepts a number or a [re, im] pair.
Complex complex_from(const Json& j, const std::string& what);
/// Accepts an array of complex values.
CVec cvec_from(const Json& j, const std::string& what);

double number_from(const Json& j, const std::string& what);
long long integer_from(const Json& j, const std::string& what);

/// Parses JSON text, raising UsageError on syntax errors.
Json parse(const std::string& text, const std::string& what);

}  // namespace lretract::cli

#endif  // LRETRACT_CLI_JSON_IO_HPP_
