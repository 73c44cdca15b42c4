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

// Batch front end: a run is described by a RunManifest, executed into a JSON
// report and an exit code (0 pass, 1 verified negative, 2 usage error).

#ifndef LRETRACT_CLI_CLI_HPP_
#define LRETRACT_CLI_CLI_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "lretract/retractions.hpp"
#include "lretract_cli/json_io.hpp"

namespace lretract::cli {

enum ExitCode : int { kPass = 0, kNegative = 1, kUsage = 2 };

struct RunManifest {
  std::string subcommand;
  Json parameters = Json::object();
  std::uint64_t seed = 0;
  double tolerance = 1e-10;
  std::uint64_t samples = 10000;
  std::string output;  // empty: standard output

  friend bool operator==(const RunManifest&, const RunManifest&) = default;
};

Json to_json(const RunManifest& m);
/// Rejects unknown keys and ill-typed values with UsageError.
RunManifest manifest_from_json(const Json& j);

/// {"type": "TetraRoyal"}, {"type": "BidiscRat", "a": [re, im], "t": 0.5}, ...
RetractionSpec retraction_from_json(const Json& j);
Json to_json(const RetractionSpec& spec);

struct Outcome {
  Json report;
  int exit_code = kPass;
  /// Sample-level rows for --csv (first row is the header).
  std::vector<std::vector<std::string>> table;
};

/// Runs a manifest. Throws UsageError or lretract::Error for invalid input.
Outcome execute(const RunManifest& m);

/// Command-line entry point; never returns anything but 0, 1 or 2.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lretract::cli

#endif  // LRETRACT_CLI_CLI_HPP_
