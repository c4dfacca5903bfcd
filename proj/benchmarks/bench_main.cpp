#include <benchmark/benchmark.h>

#include "wqcm/catalog.hpp"
#include "wqcm/expr.hpp"
#include "wqcm/suites.hpp"

namespace {

using namespace wqcm;

void BM_JetMultiply(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  std::vector<double> coords(dim);
  for (int i = 0; i < dim; ++i) coords[i] = 0.1 * (i + 1);
  const Point p(coords);
  const Jet2 a = sin(Jet2::coordinate(p, 0)) + Jet2::coordinate(p, dim - 1);
  const Jet2 b = exp(Jet2::coordinate(p, dim / 2));
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_JetMultiply)->Arg(3)->Arg(5)->Arg(7);

void BM_ExprEvalJet(benchmark::State& state) {
  const std::vector<std::string> coords = {"x", "y", "z"};
  const Expr e = parse("sin(x)*exp(y) + z^3/(1 + x^2) - sqrt(2 + y)", coords);
  const Point p({0.3, -0.2, 0.5});
  for (auto _ : state) benchmark::DoNotOptimize(e.eval_jet(p));
}
BENCHMARK(BM_ExprEvalJet);

void BM_Evaluate(benchmark::State& state) {
  CatalogParams params;
  params.n = static_cast<int>(state.range(0));
  const WeakACM s(catalog("sasakian", params));
  std::vector<double> coords(s.def().dim(), 0.1);
  const Point p(coords);
  for (auto _ : state) benchmark::DoNotOptimize(s.evaluate(p));
}
BENCHMARK(BM_Evaluate)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMicrosecond);

void BM_SuiteAll(benchmark::State& state) {
  const WeakACM s(parse_builtin("sasakian-r3"));
  SuiteOptions opts;
  opts.plan.count = static_cast<int>(state.range(0));
  opts.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(run_all_suites(s, opts));
}
BENCHMARK(BM_SuiteAll)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
