#include <benchmark/benchmark.h>

#include "pointfw/dictionary.hpp"
#include "pointfw/experiment.hpp"
#include "pointfw/fw.hpp"
#include "pointfw/hawkes.hpp"
#include "pointfw/sim.hpp"

using namespace pointfw;

namespace {

PointSet simulated(std::size_t K, std::size_t n, bool hawkes = false) {
  SimDesign d;
  d.K = K;
  d.n = n;
  if (hawkes) {
    d.hawkes = HawkesTruth{};
    d.dynamics = Dynamics::Var1;
  }
  return PointSet::from_timeline(simulate(d).timeline);
}

void BM_LogLikelihood(benchmark::State& state) {
  const auto p = simulated(10, static_cast<std::size_t>(state.range(0)));
  const std::vector<double> f(p.size(), 0.1);
  for (auto _ : state) benchmark::DoNotOptimize(log_likelihood(f, p));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(p.size()));
}
BENCHMARK(BM_LogLikelihood)->Arg(100)->Arg(1000)->Arg(10000);

void BM_DictionarySelect(benchmark::State& state) {
  const auto K = static_cast<std::size_t>(state.range(0));
  const auto p = simulated(K, 500);
  const Dictionary dict(estimator_dictionary(EstimatorKind::Poly, K), p);
  const auto w = signed_sample(std::vector<double>(p.size(), 0.0), p).combined();
  for (auto _ : state) benchmark::DoNotOptimize(dict.select(w));
}
BENCHMARK(BM_DictionarySelect)->Arg(10)->Arg(50);

void BM_Fit(benchmark::State& state) {
  const auto p = simulated(10, 500);
  const Dictionary dict(estimator_dictionary(EstimatorKind::Poly, 10), p);
  FitConfig cfg;
  cfg.budget = 4.0;
  cfg.iterations = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fit(p, dict, cfg));
}
BENCHMARK(BM_Fit)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_HawkesLoglik(benchmark::State& state) {
  const auto p = simulated(10, 1000, true);
  const std::vector<double> g(p.size(), 0.0);
  for (auto _ : state) benchmark::DoNotOptimize(hawkes_loglik_ca(2.0, 1.3, g, p));
}
BENCHMARK(BM_HawkesLoglik);

}  // namespace
BENCHMARK_MAIN();
