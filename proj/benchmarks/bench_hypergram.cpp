#include <benchmark/benchmark.h>

#include "ngf/hypergram.hpp"

namespace {

ngf::HypergramCell& shared_cell() {
  static ngf::HypergramCell cell(ngf::EntityId{}, ngf::CellKind::histogram, {16}, 8);
  return cell;
}

// Each benchmark thread writes into the same cell through its own shard.
void BM_AccumulateContended(benchmark::State& state) {
  auto& cell = shared_cell();
  const ngf::AttributeValue delta(ngf::Histogram{std::vector<double>(16, 1.0)});
  const auto shard = static_cast<std::size_t>(state.thread_index());
  for (auto _ : state) cell.accumulate(delta, shard);
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_AccumulateContended)->ThreadRange(1, 8)->UseRealTime();

void BM_Reconcile(benchmark::State& state) {
  ngf::HypergramCell cell(ngf::EntityId{}, ngf::CellKind::tensor, {static_cast<std::size_t>(state.range(0))}, 8);
  const ngf::AttributeValue delta(ngf::Tensor::vector(std::vector<double>(static_cast<std::size_t>(state.range(0)), 0.5)));
  for (auto _ : state) {
    cell.accumulate(delta);
    benchmark::DoNotOptimize(cell.reconcile());
  }
}
BENCHMARK(BM_Reconcile)->Arg(16)->Arg(1024);

}  // namespace
