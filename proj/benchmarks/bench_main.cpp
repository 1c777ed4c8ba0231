#include <benchmark/benchmark.h>

#include <random>

#include "qholo/holonomy.hpp"
#include "support/ladder_corpus.hpp"
#include "support/random_poly.hpp"

using namespace qholo;

namespace {

const ColoredBraid kTrefoil{2, {1, 1, 1}, {1, 1}};
const ColoredBraid kFigureEight{3, {1, -2, 1, -2}, {1, 1, 1}};

void BM_PolyMultiply(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const int terms = static_cast<int>(state.range(0));
  const LaurentPoly x = testing::random_poly(rng, kVarsAQM, terms, 6);
  const LaurentPoly y = testing::random_poly(rng, kVarsAQM, terms, 6);
  for (auto _ : state) benchmark::DoNotOptimize(x * y);
}
BENCHMARK(BM_PolyMultiply)->Arg(8)->Arg(32)->Arg(128);

// Fresh evaluator each iteration: measures the reduction itself, not the memo.
void BM_WebSymbolic(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const Web w = testing::random_ladder_web(rng, 3, static_cast<int>(state.range(0)), 3);
  for (auto _ : state) {
    Evaluator ev;
    benchmark::DoNotOptimize(ev.symbolic(w));
  }
}
BENCHMARK(BM_WebSymbolic)->Arg(8)->Arg(12)->Unit(benchmark::kMicrosecond);

void BM_WebAtN(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const Web w = testing::random_ladder_web(rng, 3, 12, 3);
  for (auto _ : state) {
    Evaluator ev;
    benchmark::DoNotOptimize(ev.at_N(w, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_WebAtN)->Arg(2)->Arg(4)->Unit(benchmark::kMicrosecond);

void BM_ColoredTrefoil(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ColoredBraid b = kTrefoil.with_component_colors({n});
  for (auto _ : state) {
    Evaluator ev;
    benchmark::DoNotOptimize(colored_homfly_columns(b, ev));
  }
}
BENCHMARK(BM_ColoredTrefoil)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_ColoredFigureEight(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ColoredBraid b = kFigureEight.with_component_colors({n});
  for (auto _ : state) {
    Evaluator ev;
    benchmark::DoNotOptimize(colored_homfly_columns(b, ev));
  }
}
BENCHMARK(BM_ColoredFigureEight)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_TableTrefoil(benchmark::State& state) {
  TableOptions opts;
  opts.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(build_table(kTrefoil, 0, static_cast<int>(state.range(0)), opts));
}
BENCHMARK(BM_TableTrefoil)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_GuessUnknot(benchmark::State& state) {
  const SequenceTable t = build_table(ColoredBraid{1, {}, {1}}, 0, 10);
  const int box = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(guess_recursion(t, {1, box, box, box}));
}
BENCHMARK(BM_GuessUnknot)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_OperatorMultiply(benchmark::State& state) {
  std::mt19937_64 rng(3);
  std::vector<LaurentPoly> x, y;
  for (int j = 0; j <= state.range(0); ++j) {
    x.push_back(testing::random_poly(rng, kVarsAQM, 6, 3));
    y.push_back(testing::random_poly(rng, kVarsAQM, 6, 3));
  }
  const OreOperator p(Algebra::kWt, x), r(Algebra::kWt, y);
  for (auto _ : state) benchmark::DoNotOptimize(op_multiply(p, r));
}
BENCHMARK(BM_OperatorMultiply)->Arg(1)->Arg(3);

void BM_RightGcd(benchmark::State& state) {
  // gcd of two left multiples of the unknot operator
  const SequenceTable t = build_table(ColoredBraid{1, {}, {1}}, 0, 10);
  const OreOperator g = *guess_recursion(t, {1, 2, 2, 2});
  std::mt19937_64 rng(4);
  const OreOperator u(Algebra::kWt, {testing::random_nonneg_poly(rng, kVarsAQM), LaurentPoly(1L)});
  const OreOperator v(Algebra::kWt, {testing::random_nonneg_poly(rng, kVarsAQM), testing::random_nonneg_poly(rng, kVarsAQM)});
  const OreOperator x = op_multiply(u, g), y = op_multiply(v, g);
  for (auto _ : state) benchmark::DoNotOptimize(right_gcd(x, y));
}
BENCHMARK(BM_RightGcd)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
