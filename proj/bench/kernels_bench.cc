// Copyright 2026 The dpprov Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Compares the OpenMP kernels against their serial reference versions.

#include <benchmark/benchmark.h>
#include <omp.h>

#include <numeric>
#include <vector>

#include "dpprov/cost_model.h"
#include "dpprov/dp_core.h"
#include "dpprov/kernels.h"

namespace dpprov {
namespace {

struct AccuracyFixture {
  AccuracyTarget target = MakeAccuracyTarget(0.2, 0.1);
  std::int64_t k = RequiredCohortCount(target, 1000);
  BitDatabase db = AdversarialDatabase(1000, k, true);
  std::vector<std::int64_t> cohort = [this] {
    std::vector<std::int64_t> c(k);
    std::iota(c.begin(), c.end(), 0);
    return c;
  }();
};

void BM_EmpiricalAccuracy(benchmark::State& state) {
  omp_set_num_threads(static_cast<int>(state.range(0)));
  const AccuracyFixture f;
  AccuracyRunOptions opt;
  opt.seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(EmpiricalAccuracy(f.db, f.target, f.cohort, opt));
  }
  state.SetItemsProcessed(state.iterations() * opt.trials);
}
BENCHMARK(BM_EmpiricalAccuracy)->Arg(1)->Arg(2)->Arg(4)->UseRealTime();

void BM_EmpiricalAccuracyReference(benchmark::State& state) {
  const AccuracyFixture f;
  AccuracyRunOptions opt;
  opt.seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        EmpiricalAccuracyReference(f.db, f.target, f.cohort, opt));
  }
  state.SetItemsProcessed(state.iterations() * opt.trials);
}
BENCHMARK(BM_EmpiricalAccuracyReference)->UseRealTime();

CostCurve SweepCurve() {
  return MakeCostCurve(
      QuantileModel::NormalMixture({0.6, 0.4}, {3.0, 6.0}, {0.6, 1.2}), 1000.0,
      1.0 / 3.0);
}

void BM_SweepCostCurves(benchmark::State& state) {
  omp_set_num_threads(static_cast<int>(state.range(0)));
  const CostCurve curve = SweepCurve();
  const auto grid = AccuracyGrid(0.01, 0.99, 0.01);
  for (auto _ : state) benchmark::DoNotOptimize(SweepCostCurves(curve, grid));
}
BENCHMARK(BM_SweepCostCurves)->Arg(1)->Arg(2)->Arg(4)->UseRealTime();

void BM_SweepCostCurvesReference(benchmark::State& state) {
  const CostCurve curve = SweepCurve();
  const auto grid = AccuracyGrid(0.01, 0.99, 0.01);
  for (auto _ : state) {
    benchmark::DoNotOptimize(SweepCostCurvesReference(curve, grid));
  }
}
BENCHMARK(BM_SweepCostCurvesReference)->UseRealTime();

void BM_OrderingSuite(benchmark::State& state) {
  omp_set_num_threads(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(RunOrderingSuite(7, 50));
}
BENCHMARK(BM_OrderingSuite)->Arg(1)->Arg(2)->Arg(4)->UseRealTime();

void BM_OrderingSuiteReference(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(RunOrderingSuiteReference(7, 50));
}
BENCHMARK(BM_OrderingSuiteReference)->UseRealTime();

void BM_CheckAuctionInstances(benchmark::State& state) {
  omp_set_num_threads(static_cast<int>(state.range(0)));
  const auto instances = ExhaustiveAuctionInstances();
  for (auto _ : state) benchmark::DoNotOptimize(CheckAuctionInstances(instances));
}
BENCHMARK(BM_CheckAuctionInstances)->Arg(1)->Arg(2)->Arg(4)->UseRealTime();

void BM_CheckAuctionInstancesReference(benchmark::State& state) {
  const auto instances = ExhaustiveAuctionInstances();
  for (auto _ : state) {
    benchmark::DoNotOptimize(CheckAuctionInstancesReference(instances));
  }
}
BENCHMARK(BM_CheckAuctionInstancesReference)->UseRealTime();

}  // namespace
}  // namespace dpprov

BENCHMARK_MAIN();
