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

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "lretract_cli/cli.hpp"
#include "lretract_cli/json_io.hpp"

using namespace lretract;
using namespace lretract::cli;

namespace {

struct Result {
  int code = -1;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  args.insert(args.begin(), "lretract");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Result r;
  r.code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path scratch(const std::string& leaf) {
  const auto dir = std::filesystem::temp_directory_path() / "lretract_cli_tests";
  std::filesystem::create_directories(dir);
  return dir / leaf;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("membership") {
    const Result in = call({"membership", "--domain", "tetrablock", "--point", "[[0,0],[0,0],[0,0]]"});
    CHECK(in.code == 0);
    const Json j = Json::parse(in.out);
    CHECK(j["member"] == true);
    CHECK(j["domain"] == "tetrablock");
    CHECK(j["point"].size() == 3);
    CHECK(j.contains("gauge_or_witness"));

    const Result out = call({"membership", "--domain", "lie:3", "--point", "[[0.5,0],[0,-0.5],[0,0]]"});
    CHECK(out.code == 1);
    CHECK(Json::parse(out.out)["member"] == false);

    CHECK(call({"membership", "--domain", "tetrablock", "--point", "[[0,0],[0"}).code == 2);
    CHECK(call({"membership", "--domain", "tetrablock", "--point", "[[0,0],[0,0]]"}).code == 2);
    CHECK(call({"membership", "--domain", "nowhere", "--point", "[[0,0]]"}).code == 2);
    CHECK(call({"membership", "--domain", "disc"}).code == 2);
  }

  TEST_CASE("verify-retraction") {
    const Result ok = call({"--samples", "500", "verify-retraction", "--retraction", R"({"type":"TetraRoyal"})"});
    CHECK(ok.code == 0);
    const Json j = Json::parse(ok.out);
    CHECK(j["passed"] == true);
    CHECK(j["checks"].size() == 3);

    CHECK(call({"verify-retraction", "--retraction", R"({"type":"BidiscRat","a":[0.5,0],"t":0.3})"}).code == 2);
    CHECK(call({"verify-retraction", "--retraction", R"({"type":"LieEven","n":1})"}).code == 2);
    CHECK(call({"verify-retraction", "--retraction", R"({"type":"Nope"})"}).code == 2);
    CHECK(call({"verify-retraction", "--retraction", R"({"type":"TetraRoyal","x":1})"}).code == 2);

    // A domain other than the retraction's own is a usage error.
    const Result wrong = call({"--samples", "500", "verify-retraction", "--retraction",
                               R"({"type":"TetraRoyal"})", "--domain", "indicatrix"});
    CHECK(wrong.code == 2);

    const Result omegas = call({"--samples", "300", "verify-retraction", "--retraction",
                                R"({"type":"TetraSym"})", "--omegas", "[[1,0],[0,1]]"});
    CHECK(omegas.code == 0);
    CHECK(Json::parse(omegas.out)["necessary_identity"].size() == 2);
  }

  TEST_CASE("lemma suites") {
    CHECK(call({"lemma-suite", "lemma41"}).code == 0);
    CHECK(call({"lemma-suite", "l3-obstruction"}).code == 0);
    CHECK(call({"lemma-suite", "remfzero"}).code == 0);
    CHECK(call({"lemma-suite", "remfzero", "--params", R"({"f_constant":[0.3,0]})"}).code == 1);
    CHECK(call({"lemma-suite", "unknown"}).code == 2);
    CHECK(call({"lemma-suite", "lemma41", "--params", R"({"bogus":1})"}).code == 2);
    CHECK(call({"lemma-suite", "lemma41", "--params", "[1]"}).code == 2);

    const Result lin = call({"lemma-suite", "linret-classify", "--params",
                             R"({"planes":[{"u":[[0,0],[0,0],[1,0]],"v":[[1,0],[0.5,0],[0,0]]}]})"});
    CHECK(lin.code == 0);
    const Json j = Json::parse(lin.out);
    REQUIRE(j["planes"].size() == 1);
    CHECK(j["planes"][0]["status"] == "feasible");
  }

  TEST_CASE("metric") {
    const Result royal = call({"metric", "--domain", "tetrablock", "--z", "[[0,0],[0,0],[0,0]]",
                               "--w", "[[0.3,0.1],[-0.2,0.4],[-0.1,0.1]]"});
    CHECK(royal.code == 0);
    const Json j = Json::parse(royal.out);
    CHECK(std::abs(j["gap"].get<double>()) <= 1e-9);
    for (const char* k : {"lower", "upper", "gap", "budget", "degree"}) CHECK(j.contains(k));

    const Result same = call({"metric", "--domain", "disc", "--z", "[[0.1,0]]", "--w", "[[0.1,0]]"});
    CHECK(same.code == 0);
    const Json s = Json::parse(same.out);
    CHECK(s["lower"] == 0.0);
    CHECK(s["upper"] == 0.0);
    CHECK(s["gap"] == 0.0);

    CHECK(call({"metric", "--domain", "disc", "--z", "[[0,0]]", "--w", "[[1.5,0]]"}).code == 2);
  }

  TEST_CASE("manifest serialization") {
    RunManifest m;
    m.subcommand = "metric";
    m.parameters = Json::parse(R"({"domain":"disc","z":[[0,0]],"w":[[0.5,0]]})");
    m.seed = 12345678901234ULL;
    m.tolerance = 1e-11;
    m.samples = 77;
    m.output = "x.json";
    CHECK(manifest_from_json(to_json(m)) == m);
    CHECK(manifest_from_json(Json::parse(dump(to_json(m)))) == m);

    Json extra = to_json(m);
    extra["surprise"] = 1;
    CHECK_THROWS_AS(manifest_from_json(extra), UsageError);
    CHECK_THROWS_AS(manifest_from_json(Json::parse(R"({"seed":1})")), UsageError);
    CHECK_THROWS_AS(manifest_from_json(Json::parse(R"({"subcommand":"metric","seed":-1})")), UsageError);
    CHECK_THROWS_AS(manifest_from_json(Json::parse(R"({"subcommand":"metric","tolerance":"x"})")),
                    UsageError);
  }

  TEST_CASE("retraction specs round trip") {
    const char* specs[] = {
        R"({"type":"BidiscRa","a":[0.25,-0.5]})",
        R"({"type":"BidiscRat","a":[0,1],"t":0.5})",
        R"({"type":"LieEven","n":3})",
        R"({"type":"TetraRoyal"})",
        R"({"type":"IndicatrixRt","t":0.75})",
        R"({"type":"EllipsoidLift","p":[2,1],"point":[[0.5,0],[0,0]],"directions":[[[0,0],[1,0]]]})",
        R"({"type":"LambdaLift","basepoint":[[0.1,0],[0.3,0.2],[-0.1,0]],"inner":{"center":[[0.1,0],[-0.1,0],[-0.06,-0.12]],"radius":0.05}})",
        R"({"type":"LambdaLift","basepoint":[[0.1,0],[0.3,0.2],[-0.1,0]],"inner":{"constant":[[0,0],[0,0],[0.3,0]]}})",
        R"({"type":"Linear3","m":[[1,0],[0,0],[0,0],[0,0],[1,0],[0,0],[0,0],[0,0],[0,0]]})",
    };
    for (const char* s : specs) {
      CAPTURE(s);
      const Json j = Json::parse(s);
      CHECK(to_json(retraction_from_json(j)) == j);
    }
    CHECK_THROWS_AS(retraction_from_json(Json::parse(R"({"type":"Linear3","m":[[1,0]]})")), UsageError);
    CHECK_THROWS_AS(retraction_from_json(Json::parse(R"({"a":1})")), UsageError);
  }

  TEST_CASE("report formatting") {
    Json j;
    j["x"] = 0.1;
    j["inf"] = std::numeric_limits<double>::infinity();
    j["ninf"] = -std::numeric_limits<double>::infinity();
    j["nan"] = std::numeric_limits<double>::quiet_NaN();
    j["z"] = to_json(CVec{Complex(1.5, -2.0)});
    const std::string text = dump(j);
    CHECK(text.find("\"x\": 0.10000000000000001") != std::string::npos);
    CHECK(text.find("\"inf\": \"inf\"") != std::string::npos);
    CHECK(text.find("\"ninf\": \"-inf\"") != std::string::npos);
    CHECK(text.find("\"nan\": \"nan\"") != std::string::npos);
    CHECK(text.find("[[1.5, -2]]") != std::string::npos);
    CHECK(text.find("\"x\"") < text.find("\"inf\""));
    CHECK(complex_from(Json::parse("[1, 2]"), "c") == Complex(1, 2));
    CHECK_THROWS_AS(complex_from(Json::parse("[1, 2, 3]"), "c"), UsageError);
    CHECK_THROWS_AS(parse("{", "text"), UsageError);
  }

  TEST_CASE("manifests, files and determinism") {
    const auto manifest = scratch("m.json");
    const Result emitted = call({"--seed", "5", "--samples", "400", "--emit-manifest", "verify-retraction",
                                 "--retraction", R"({"type":"TetraSym"})", "--workers", "3"});
    REQUIRE(emitted.code == 0);
    std::ofstream(manifest) << emitted.out;

    const Result a = call({"run", "--manifest", manifest.string()});
    const Result b = call({"run", "--manifest", manifest.string()});
    const Result direct = call({"--seed", "5", "--samples", "400", "verify-retraction", "--retraction",
                                R"({"type":"TetraSym"})", "--workers", "3"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out == direct.out);

    const auto report = scratch("r.json");
    const auto csv = scratch("r.csv");
    std::filesystem::remove(report);
    const Result filed = call({"--manifest", manifest.string(), "--out", report.string(), "--csv",
                               csv.string(), "verify-retraction"});
    CHECK(filed.code == 0);
    CHECK(filed.out.empty());
    const Json rep = Json::parse(slurp(report));
    CHECK(rep["manifest"]["output"] == report.string());
    const std::string rows = slurp(csv);
    CHECK(rows.rfind("check,index,violation\n", 0) == 0);
    CHECK(std::count(rows.begin(), rows.end(), '\n') == 1 + 3 * 400);

    CHECK(call({"run"}).code == 2);
    CHECK(call({"--manifest", manifest.string(), "metric"}).code == 2);
    CHECK(call({"run", "--manifest", scratch("missing.json").string()}).code == 2);
    CHECK(call({}).code == 2);
  }
}
