// Copyright 2026 The graphchain Authors
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

#include "graphchain/assignment.hpp"
#include "graphchain/fgnn.hpp"
#include "graphchain/generators.hpp"
#include "graphchain/relaxations.hpp"
#include "graphchain/rng.hpp"

namespace gc = graphchain;

namespace {

gc::InstanceTriplet er_instance(std::size_t n, double noise) {
  gc::GenParams p;
  p.n = n;
  p.d = 4;
  p.p_noise = noise;
  p.seed = 1;
  return gc::generate_instance(p, 0);
}

void BM_LapMax(benchmark::State& state) {
  const auto n = static_cast<Eigen::Index>(state.range(0));
  gc::Rng rng(5);
  gc::DenseMatrix w(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) w(i, j) = rng.uniform();
  }
  for (auto _ : state) benchmark::DoNotOptimize(gc::lap_max(w));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_LapMax)->RangeMultiplier(2)->Range(16, 256)->Complexity(benchmark::oNCubed);

void BM_ConvexRelax(benchmark::State& state) {
  const auto inst = er_instance(static_cast<std::size_t>(state.range(0)), 0.1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(gc::convex_relax(inst.graph_a, inst.graph_b_permuted));
  }
}
BENCHMARK(BM_ConvexRelax)->Arg(25)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_FaqBarycenter(benchmark::State& state) {
  const auto inst = er_instance(static_cast<std::size_t>(state.range(0)), 0.1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(gc::faq_barycenter(inst.graph_a, inst.graph_b_permuted));
  }
}
BENCHMARK(BM_FaqBarycenter)->Arg(25)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

template <typename T>
void BM_FgnnForward(benchmark::State& state) {
  const auto inst = er_instance(static_cast<std::size_t>(state.range(0)), 0.0);
  gc::fgnn::FgnnConfig cfg;
  cfg.feature_dim = 32;
  cfg.mlp_hidden = 64;
  gc::Rng rng(3);
  const auto params = gc::fgnn::FgnnParams<T>::init(cfg, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        gc::fgnn::compute_similarity(inst.graph_a, nullptr, inst.graph_b_permuted, nullptr, params));
  }
}
BENCHMARK_TEMPLATE(BM_FgnnForward, float)->Arg(25)->Arg(50)->Unit(benchmark::kMillisecond);
BENCHMARK_TEMPLATE(BM_FgnnForward, double)->Arg(25)->Arg(50)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
