//
// wlbench - Copyright 2026 The wlbench Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <benchmark/benchmark.h>

#include "fixtures.h"
#include "wlbench/generator.h"
#include "wlbench/metrics.h"

namespace {

using namespace wlbench;

Dataset molecules(std::size_t graphs) {
  std::mt19937_64 rng(1);
  std::vector<std::shared_ptr<const Graph>> gs;
  std::vector<ClassId> y;
  for (std::size_t i = 0; i < graphs; ++i) {
    gs.push_back(testing::random_connected_graph(rng, 10 + rng() % 30, 8, 0.02));
    y.push_back(static_cast<ClassId>(i % 2));
  }
  return testing::make_dataset(gs, y, {0, 1, 2, 3, 4, 5, 6, 7});
}

void BM_Refine(benchmark::State& state) {
  Dataset d = molecules(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(refine(d, 3));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Refine)->Arg(500)->Arg(4000)->Unit(benchmark::kMillisecond);

void BM_Enumerate(benchmark::State& state) {
  Dataset d = molecules(2000);
  const auto k = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    std::size_t n = 0;
    enumerate_benchmarks(d, 3, k, [&](XaiBenchmark&&) { ++n; });
    benchmark::DoNotOptimize(n);
  }
}
BENCHMARK(BM_Enumerate)->Arg(5)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_RocAuc(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<double> s(n);
  for (auto& x : s) x = static_cast<double>(rng() % 1000);
  std::vector<NodeIndex> gt;
  for (NodeIndex v = 0; v < n; v += 3) gt.push_back(v);
  NodeSet mask(gt);
  for (auto _ : state) benchmark::DoNotOptimize(roc_auc(s, mask));
}
BENCHMARK(BM_RocAuc)->Arg(30)->Arg(1000);

void BM_FriedmanCurve(benchmark::State& state) {
  ScoreMatrix m;
  m.methods = testing::reference_methods();
  for (const auto& [name, r] : testing::reference_rows()) {
    m.row_names.push_back(name);
    m.rows.push_back(r);
  }
  for (auto _ : state) benchmark::DoNotOptimize(friedman_curve(m, 1000, 1));
}
BENCHMARK(BM_FriedmanCurve)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
