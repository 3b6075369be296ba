#include <benchmark/benchmark.h>

#include <random>

#include "ngf/metrics.hpp"

namespace {

std::vector<double> random_vector(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

void BM_Bhattacharyya(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const ngf::Histogram p{random_vector(n, 1)}, q{random_vector(n, 2)};
  for (auto _ : state) benchmark::DoNotOptimize(ngf::bhattacharyya_distance(p, q));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Bhattacharyya)->Range(8, 4096);

void BM_Euclidean(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = random_vector(n, 3), b = random_vector(n, 4);
  for (auto _ : state) benchmark::DoNotOptimize(ngf::euclidean(a, b));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Euclidean)->Arg(128)->Arg(512)->Arg(2048);

void BM_Levenshtein(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::string a(n, 'a'), b(n, 'a');
  for (std::size_t i = 0; i < n; i += 3) b[i] = 'b';
  for (auto _ : state) benchmark::DoNotOptimize(ngf::levenshtein(a, b));
}
BENCHMARK(BM_Levenshtein)->Arg(16)->Arg(128)->Arg(512);

void BM_Dtw(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = ngf::Tensor::vector(random_vector(n, 5)), b = ngf::Tensor::vector(random_vector(n, 6));
  for (auto _ : state) benchmark::DoNotOptimize(ngf::dtw(a, b));
}
BENCHMARK(BM_Dtw)->Arg(32)->Arg(128)->Arg(512);

}  // namespace
