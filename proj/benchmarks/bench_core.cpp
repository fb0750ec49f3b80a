// Copyright 2026 The shadowfit authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Microbenchmarks for the hot paths: the shadow channel, snapshot
// fidelities, loss evaluation, pointwise estimation, simulation, and the
// full functional fit.

#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "shadowfit/fit.hpp"
#include "shadowfit/io.hpp"
#include "shadowfit/loss.hpp"
#include "shadowfit/qubit.hpp"
#include "shadowfit/shadows.hpp"
#include "shadowfit/simulate.hpp"

namespace {

using namespace shadowfit;

const Interval kDomain{800.0, 820.0};

SimConfig bench_config(std::size_t n_x, std::int64_t per_setting) {
  SimConfig config;
  config.truth = bbo_profile(2.0, kDomain);
  config.xs = io::linspace(kDomain.lo, kDomain.hi, n_x);
  config.shots = ShotsMode::fixed_per_setting(per_setting);
  config.seed = 7;
  return config;
}

void BM_ApplyChannelInverse(benchmark::State& state) {
  const DensityOperator rho = projector_state(Projector::D);
  for (auto _ : state) {
    benchmark::DoNotOptimize(invert_channel(apply_channel(rho)));
  }
}
BENCHMARK(BM_ApplyChannelInverse);

void BM_SnapshotFidelity(benchmark::State& state) {
  const PureHypothesis eta{1.0, 2.5};
  int p = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        snapshot_fidelity(eta, static_cast<Projector>(p)));
    p = (p + 1) % kNumProjectors;
  }
}
BENCHMARK(BM_SnapshotFidelity);

void BM_FcsLoss(benchmark::State& state) {
  const SimConfig config = bench_config(static_cast<std::size_t>(state.range(0)), 30);
  const CountTable table = simulate(config);
  const ProfileModel model =
      ProfileModel::affine_in_x(1.5, 0.02, 4.6, -0.3, kDomain);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fcs_loss(table, model));
  }
}
BENCHMARK(BM_FcsLoss)->Arg(16)->Arg(64)->Arg(256);

void BM_CsPointwiseFit(benchmark::State& state) {
  const SimConfig config = bench_config(1, 200);
  const CountTable table = simulate(config);
  const double x = table.pixels().front().x;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cs_pointwise_fit(table, x));
  }
}
BENCHMARK(BM_CsPointwiseFit);

void BM_Simulate(benchmark::State& state) {
  SimConfig config = bench_config(static_cast<std::size_t>(state.range(0)), 30);
  for (auto _ : state) {
    config.replicate += 1;  // fresh streams each iteration
    benchmark::DoNotOptimize(simulate(config));
  }
}
BENCHMARK(BM_Simulate)->Arg(16)->Arg(64)->Arg(256);

void BM_FitCs(benchmark::State& state) {
  const SimConfig config = bench_config(64, 30);
  const CountTable table = simulate(config);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fit_cs(table));
  }
}
BENCHMARK(BM_FitCs);

void BM_FitFcs(benchmark::State& state) {
  const SimConfig config = bench_config(64, 30);
  const CountTable table = simulate(config);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fit_fcs(table, FamilySpec::affine()));
  }
}
BENCHMARK(BM_FitFcs);

}  // namespace

BENCHMARK_MAIN();
