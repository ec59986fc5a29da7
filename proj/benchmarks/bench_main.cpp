#include <benchmark/benchmark.h>

#include <random>

#include "tropical_theta/tropical_theta.hpp"

using namespace trop;

namespace {

// K_4 with mixed lengths, the largest pure curve used in the tests.
TropicalCurve k4_curve(std::int64_t scale) {
  WeightedGraph g = WeightedGraph::from_indices(
      {0, 0, 0, 0}, std::vector<std::pair<VertexIndex, VertexIndex>>{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  return TropicalCurve(g, {Rational(1), Rational(1), Rational(2), Rational(1, 2), Rational(1), Rational(3, 2)})
      .rescaled(Rational(scale));
}

void BM_Reduce(benchmark::State& state) {
  const TropicalCurve c = k4_curve(state.range(0));
  const FiniteModel model = FiniteModel::build(c, std::vector<CurvePoint>{});
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<Coefficient> coeff(-3, 3);
  std::vector<Coefficient> chips(model.num_vertices());
  for (auto& x : chips) x = coeff(rng);
  for (auto _ : state) benchmark::DoNotOptimize(reduce(model, chips, 0));
  state.counters["model_vertices"] = static_cast<double>(model.num_vertices());
}
BENCHMARK(BM_Reduce)->Arg(1)->Arg(4)->Arg(16);

void BM_IsEquivalent(benchmark::State& state) {
  const TropicalCurve c = k4_curve(state.range(0));
  const Divisor k = canonical_divisor(c);
  const auto thetas = all_thetas(c);
  for (auto _ : state) benchmark::DoNotOptimize(is_equivalent(c, 2 * thetas.back().representative, k));
}
BENCHMARK(BM_IsEquivalent)->Arg(1)->Arg(4);

void BM_EnumerateStableGraphs(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_stable_graphs(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_EnumerateStableGraphs)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_BuildPoset(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(build_poset(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_BuildPoset)->DenseRange(2, 3)->Unit(benchmark::kMillisecond);

void BM_ClassifyAll(benchmark::State& state) {
  const TropicalCurve c = k4_curve(1);
  const auto thetas = all_thetas(c);
  for (auto _ : state) {
    for (const auto& t : thetas) benchmark::DoNotOptimize(classify_effective(c, t.cycle));
  }
}
BENCHMARK(BM_ClassifyAll)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
