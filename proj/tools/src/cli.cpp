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

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "lretract/errors.hpp"
#include "lretract_cli/cli.hpp"

namespace lretract::cli {
namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write '" + path + "'");
  f << text;
  if (!f) throw UsageError("write failed for '" + path + "'");
}

std::string csv_text(const std::vector<std::vector<std::string>>& rows) {
  std::string out;
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += row[i];
    }
    out += '\n';
  }
  return out;
}

// Subcommand flags that land in the manifest parameters when given.
struct ParamFlag {
  std::string key;
  std::string value;
  bool json = true;  // parse the value as JSON, else store the raw string
};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Verification toolkit for holomorphic retracts of classical domains", "lretract"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string manifest_path, out_path, csv_path;
  std::optional<std::uint64_t> seed, samples;
  std::optional<double> tol;
  bool emit_manifest = false;
  app.add_option("--manifest", manifest_path, "Run manifest (JSON)");
  app.add_option("--seed", seed, "Random seed");
  app.add_option("--samples", samples, "Sample count");
  app.add_option("--tol", tol, "Tolerance");
  app.add_option("--out", out_path, "Write the JSON report here instead of stdout");
  app.add_option("--csv", csv_path, "Write sample-level rows as CSV");
  app.add_flag("--emit-manifest", emit_manifest, "Print the effective manifest and exit");

  std::vector<ParamFlag> flags;
  const auto param = [&](CLI::App* sub, const std::string& flag, const std::string& key,
                         bool json, const std::string& help) {
    sub->add_option_function<std::string>(
        flag, [&flags, key, json](const std::string& v) { flags.push_back({key, v, json}); }, help);
  };

  CLI::App* membership = app.add_subcommand("membership", "Test a point for membership");
  param(membership, "--domain", "domain", false, "Domain name, e.g. tetrablock or lie:3");
  param(membership, "--point", "point", true, "Point as JSON, e.g. [[0.5,0],[0,-0.5],[0,0]]");

  CLI::App* verify = app.add_subcommand("verify-retraction", "Verify a retraction");
  param(verify, "--retraction", "retraction", true, "Retraction spec as JSON");
  param(verify, "--domain", "domain", false, "Domain (defaults to the natural one)");
  param(verify, "--workers", "workers", true, "Parallel workers");
  param(verify, "--omegas", "omegas", true, "Report Psi_omega o R = Psi_omega for these omegas");

  CLI::App* lemma = app.add_subcommand("lemma-suite", "Run a lemma battery");
  std::string suite;
  lemma->add_option("suite", suite, "lemma41 | l3-obstruction | linret-classify | remfzero");
  std::string extra;
  lemma->add_option("--params", extra, "Extra suite parameters as a JSON object");

  CLI::App* metric = app.add_subcommand("metric", "Caratheodory and Lempert bounds");
  param(metric, "--domain", "domain", false, "Domain name");
  param(metric, "--z", "z", true, "First point as JSON");
  param(metric, "--w", "w", true, "Second point as JSON");
  param(metric, "--degree", "degree", true, "Disc degree");
  param(metric, "--budget", "budget", true, "Optimizer evaluation budget");
  param(metric, "--family-size", "family_size", true, "Caratheodory family size");

  CLI::App* run_sub = app.add_subcommand("run", "Execute a manifest");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kPass : kUsage;
  }

  try {
    const std::string sub = app.get_subcommands().front()->get_name();
    RunManifest m;
    if (!manifest_path.empty()) {
      m = manifest_from_json(parse(read_file(manifest_path), manifest_path));
      if (sub != "run" && m.subcommand != sub) {
        throw UsageError("manifest is for '" + m.subcommand + "', not '" + sub + "'");
      }
    } else if (run_sub->parsed()) {
      throw UsageError("run: --manifest is required");
    } else {
      m.subcommand = sub;
    }
    if (seed) m.seed = *seed;
    if (samples) m.samples = *samples;
    if (tol) m.tolerance = *tol;
    if (!out_path.empty()) m.output = out_path;
    for (const auto& f : flags) {
      m.parameters[f.key] = f.json ? parse(f.value, "--" + f.key) : Json(f.value);
    }
    if (lemma->parsed()) {
      if (!suite.empty()) m.parameters["suite"] = suite;
      if (!extra.empty()) {
        const Json e = parse(extra, "--params");
        if (!e.is_object()) throw UsageError("--params: expected a JSON object");
        for (const auto& [k, v] : e.items()) m.parameters[k] = v;
      }
    }
    if (emit_manifest) {
      out << dump(to_json(m));
      return kPass;
    }

    const Outcome o = execute(m);
    const std::string text = dump(o.report);
    if (m.output.empty()) {
      out << text;
    } else {
      write_file(m.output, text);
    }
    if (!csv_path.empty()) write_file(csv_path, csv_text(o.table));
    return o.exit_code == kPass ? kPass : kNegative;
  } catch (const UsageError& e) {
    err << "lretract: " << e.what() << "\n";
  } catch (const lretract::Error& e) {
    err << "lretract: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "lretract: " << e.what() << "\n";
  }
  return kUsage;
}

}  // namespace lretract::cli
