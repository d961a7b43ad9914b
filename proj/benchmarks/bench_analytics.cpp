#include <benchmark/benchmark.h>

#include "gradelens/analytics.hpp"
#include "gradelens/demo.hpp"
#include "gradelens/reports.hpp"

namespace {

using namespace gradelens;

const Store& demo_store() {
  static const auto store = [] {
    auto s = Store::in_memory();
    seed_demo(*s);
    return s;
  }();
  return *store;
}

void BM_ClassAttainmentRate(benchmark::State& st) {
  const auto snap = demo_store().snapshot();
  for (auto _ : st) {
    benchmark::DoNotOptimize(class_attainment_rate(*snap, "c000001", "PO-A", 0.7));
  }
}
BENCHMARK(BM_ClassAttainmentRate);

void BM_ProgramRollup(benchmark::State& st) {
  const auto snap = demo_store().snapshot();
  for (auto _ : st) {
    benchmark::DoNotOptimize(program_rollup(*snap, "2023", "2024-1", "2024-2", 0.7,
                                            default_attainment_scheme()));
  }
}
BENCHMARK(BM_ProgramRollup);

void BM_ExportJson(benchmark::State& st) {
  const auto snap = demo_store().snapshot();
  for (auto _ : st) {
    const auto report =
        build_analytics_report(*snap, Scope::all(), 0.7, default_attainment_scheme());
    benchmark::DoNotOptimize(render_report(report, ExportFormat::Json));
  }
}
BENCHMARK(BM_ExportJson);

void BM_WeightedMean(benchmark::State& st) {
  const std::vector<double> means{4.49, 4.53, 4.34, 4.49, 4.52, 4.20};
  const std::vector<double> weights(6, 1.0);
  for (auto _ : st) benchmark::DoNotOptimize(weighted_mean(means, weights));
}
BENCHMARK(BM_WeightedMean);

}  // namespace
