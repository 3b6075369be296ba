#include <benchmark/benchmark.h>

#include <random>

#include "ngf/calibration.hpp"

namespace {

void BM_Calibrate(benchmark::State& state) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> same(1.0, 0.4), diff(2.0, 0.4);
  std::vector<ngf::CalibrationPair> pairs;
  for (std::int64_t i = 0; i < state.range(0); ++i) {
    pairs.push_back({std::abs(same(rng)), true});
    pairs.push_back({std::abs(diff(rng)), false});
  }
  for (auto _ : state) benchmark::DoNotOptimize(ngf::calibrate(pairs, 1.0, 0.0));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(pairs.size()));
}
BENCHMARK(BM_Calibrate)->Range(64, 1 << 16);

}  // namespace
