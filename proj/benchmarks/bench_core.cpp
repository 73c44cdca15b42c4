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

#include <benchmark/benchmark.h>

#include <vector>

#include "lretract/domains.hpp"
#include "lretract/maps.hpp"
#include "lretract/metrics.hpp"
#include "lretract/retractions.hpp"
#include "lretract/verify.hpp"

using namespace lretract;

namespace {

void BM_TetrablockMembership(benchmark::State& state) {
  const auto pts = sample(domain::Tetrablock{}, 1024, 1);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(in_tetrablock(pts[i++ & 1023]));
  }
}
BENCHMARK(BM_TetrablockMembership);

void BM_LieNorm(benchmark::State& state) {
  const auto pts = sample(domain::LieBall{static_cast<int>(state.range(0))}, 1024, 2);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(lie_norm(pts[i++ & 1023]));
}
BENCHMARK(BM_LieNorm)->Arg(3)->Arg(6);

void BM_MatrixMoebius(benchmark::State& state) {
  const SymMat2 a{0.3, 0.2, -0.1};
  for (auto _ : state) benchmark::DoNotOptimize(aut_rIII2(0.3, a));
}
BENCHMARK(BM_MatrixMoebius);

void BM_LambdaSheetLift(benchmark::State& state) {
  const SymMat2 base{0.1, Complex(0.3, 0.2), -0.1};
  const CVec x0 = lambda(base);
  std::size_t k = 0;
  for (auto _ : state) {
    // Fresh sheet each time so the branch is continued, not read from cache.
    const LambdaSheet sheet(base);
    benchmark::DoNotOptimize(sheet.lift(x0 + CVec{0.01 * (k++ % 7), 0.0, 0.0}));
  }
}
BENCHMARK(BM_LambdaSheetLift);

void BM_VerifyRetraction(benchmark::State& state) {
  VerifyOptions o;
  o.samples = static_cast<std::size_t>(state.range(0));
  o.workers = static_cast<unsigned>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(verify_retraction(retraction::TetraSym{}, domain::Tetrablock{}, o));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_VerifyRetraction)->Args({10000, 1})->Args({10000, 4})->Unit(benchmark::kMillisecond);

void BM_CarathLower(benchmark::State& state) {
  const CVec z{0.1, 0.2, 0.01}, w{0.3, -0.2, 0.05};
  for (auto _ : state) {
    benchmark::DoNotOptimize(carath_lower(domain::Tetrablock{}, z, w, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_CarathLower)->Arg(16)->Arg(64)->Arg(256);

void BM_LempertUpper(benchmark::State& state) {
  const CVec z{0.1, 0.2, 0.01}, w{0.3, -0.2, 0.05};
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        lempert_upper(domain::Tetrablock{}, z, w, 4, static_cast<std::size_t>(state.range(0))));
  }
}
BENCHMARK(BM_LempertUpper)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);

void BM_GaugeOperatorNorm(benchmark::State& state) {
  LinearMap3 m;
  m.m = {1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.5, 0.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(gauge_operator_norm(m, static_cast<std::size_t>(state.range(0))));
  }
}
BENCHMARK(BM_GaugeOperatorNorm)->Arg(512)->Arg(2048)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
