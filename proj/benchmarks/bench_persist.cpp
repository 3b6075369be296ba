#include <benchmark/benchmark.h>

#include <random>

#include "ngf/persist.hpp"
#include "ngf/store.hpp"

namespace {

ngf::Store face_store(std::size_t faces) {
  auto rng = std::make_shared<std::mt19937_64>(21);
  ngf::Store store([] { static std::uint64_t t = 1'700'000'000'000'000'000ull; return ++t; }, [rng] { return (*rng)(); });
  store.register_schema({"Face", {{"embedding", ngf::ValueDictionary::tensor({128})}}}, ngf::Side::vertex);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<ngf::EntityId> ids;
  for (std::size_t i = 0; i < faces; ++i) {
    std::vector<double> e(128);
    for (auto& x : e) x = u(*rng);
    ids.push_back(store.add_vertex("Face", {{"embedding", ngf::Tensor::vector(e)}}));
  }
  for (std::size_t i = 1; i < ids.size(); ++i) store.add_edge("IN", ids[i - 1], ids[i]);
  return store;
}

void BM_Serialize(benchmark::State& state) {
  const auto store = face_store(static_cast<std::size_t>(state.range(0)));
  std::size_t bytes = 0;
  for (auto _ : state) {
    const auto out = ngf::serialize(store);
    bytes = out.size();
    benchmark::DoNotOptimize(out.data());
  }
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(bytes));
}
BENCHMARK(BM_Serialize)->Arg(100)->Arg(1000);

void BM_Deserialize(benchmark::State& state) {
  const auto bytes = ngf::serialize(face_store(static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(ngf::deserialize(bytes));
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(bytes.size()));
}
BENCHMARK(BM_Deserialize)->Arg(100)->Arg(1000);

}  // namespace
