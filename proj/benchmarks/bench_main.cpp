#include <benchmark/benchmark.h>

#include <random>

#include "adlv/adlv.hpp"
#include "adlv/enumeration.hpp"
#include "adlv/ml.hpp"
#include "adlv/qbg.hpp"

namespace {

// Cold tables for every w of the scan, fresh memo each iteration.
void BM_TablesCold(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int max_len = static_cast<int>(state.range(1));
  const auto elements = adlv::enumerate_elements(n, max_len);
  for (auto _ : state) {
    adlv::TableComputer computer(n);
    for (const auto& rec : elements) benchmark::DoNotOptimize(computer.compact(rec.w));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(elements.size()));
}
BENCHMARK(BM_TablesCold)->Args({3, 16})->Args({4, 12})->Args({5, 14})->Unit(benchmark::kMillisecond);

void BM_SplitWitness(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(adlv::max_delta(adlv::split_witness(n)));
}
BENCHMARK(BM_SplitWitness)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_QuantumBruhatGraph(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    adlv::QuantumBruhatGraph g(n);
    benchmark::DoNotOptimize(g.edges().size());
  }
}
BENCHMARK(BM_QuantumBruhatGraph)->Arg(4)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_MlpEpoch(benchmark::State& state) {
  const auto rows = static_cast<Eigen::Index>(state.range(0));
  adlv::ml::Table t;
  t.x = adlv::ml::FeatureMatrix::Random(rows, 46);
  std::mt19937_64 rng(1);
  for (Eigen::Index i = 0; i < rows; ++i) t.y.push_back(rng() % 2 ? 1.0 : -1.0);
  t.names.assign(46, "f");
  adlv::ml::MlpConfig c;
  c.layers = 3;
  c.width = 20;
  c.head = adlv::ml::Head::kClassification;
  c.epochs = 1;
  for (auto _ : state) benchmark::DoNotOptimize(adlv::ml::fit_mlp(adlv::ml::View::all(t), c));
  state.SetItemsProcessed(state.iterations() * rows);
}
BENCHMARK(BM_MlpEpoch)->Arg(100000)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
