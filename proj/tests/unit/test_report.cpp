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

#include <cmath>
#include <limits>

#include "doctest.h"
#include "lretract/report.hpp"

using namespace lretract;

TEST_SUITE("report") {
  TEST_CASE("maximum with lexicographically smallest witness on ties") {
    ViolationMax v;
    v.add(0.1, CVec{2.0});
    v.add(0.3, CVec{5.0});
    v.add(0.3, CVec{4.0});
    v.add(0.2, CVec{0.0});
    CHECK(v.value() == 0.3);
    CHECK(v.witness() == CVec{4.0});
    CHECK(v.count() == 4);
    const CheckResult r = v.finish("probe", 0.25);
    CHECK(r.name == "probe");
    CHECK_FALSE(r.passed);
    CHECK(r.samples == 4);
    CHECK(v.finish("probe", 0.3).passed);
  }

  TEST_CASE("merge does not depend on how samples were split") {
    const double vals[] = {0.5, 0.1, 0.5, 0.7, 0.7, 0.2};
    ViolationMax whole, left, right;
    for (int i = 0; i < 6; ++i) whole.add(vals[i], CVec{double(10 - i)});
    for (int i = 0; i < 6; ++i) (i % 2 ? left : right).add(vals[i], CVec{double(10 - i)});
    ViolationMax lr = left, rl = right;
    lr.merge(right);
    rl.merge(left);
    for (const auto* m : {&lr, &rl}) {
      CHECK(m->value() == whole.value());
      CHECK(m->witness() == whole.witness());
      CHECK(m->count() == whole.count());
    }
  }

  TEST_CASE("NaN never passes and sticks through merges") {
    ViolationMax v;
    v.add(0.0, CVec{1.0});
    v.add(std::numeric_limits<double>::quiet_NaN(), CVec{3.0});
    v.add(0.5, CVec{0.0});
    const CheckResult r = v.finish("nan", 1e300);
    CHECK(std::isnan(r.max_violation));
    CHECK_FALSE(r.passed);
    ViolationMax clean;
    clean.add(0.0, CVec{0.0});
    clean.merge(v);
    CHECK_FALSE(clean.finish("nan", 1.0).passed);
  }

  TEST_CASE("report lookup and overall verdict") {
    VerificationReport rep;
    CHECK(rep.passed());
    rep.checks.push_back({"a", 0.0, {}, 1, 1e-10, true});
    rep.checks.push_back({"b", 1.0, {}, 1, 1e-10, false});
    CHECK_FALSE(rep.passed());
    REQUIRE(rep.find("b") != nullptr);
    CHECK(rep.find("b")->max_violation == 1.0);
    CHECK(rep.find("missing") == nullptr);
  }
}
