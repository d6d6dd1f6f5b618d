#include <benchmark/benchmark.h>

#include <vector>

#include "subspace/experiments.hpp"
#include "subspace/logsum.hpp"
#include "subspace/place.hpp"
#include "subspace/position.hpp"
#include "subspace/quang.hpp"
#include "subspace/weil.hpp"

using namespace subspace;

namespace {

std::vector<LinearForm> p2_arrangement() {
  return {LinearForm::of({1, 0, 0}), LinearForm::of({0, 1, 0}), LinearForm::of({1, 1, 0}),
          LinearForm::of({0, 0, 1}), LinearForm::of({1, 2, 3})};
}

void BM_Norm(benchmark::State& state) {
  const Rat x = make_rat(2 * 2 * 2 * 3 * 7 * 11, 5 * 5 * 13);
  const Place v = Place::finite(2);
  for (auto _ : state) benchmark::DoNotOptimize(norm(x, v));
}
BENCHMARK(BM_Norm);

void BM_ProductFormula(benchmark::State& state) {
  const Rat x = make_rat(123456789, 1000003);
  for (auto _ : state) benchmark::DoNotOptimize(product_formula_residual(x));
}
BENCHMARK(BM_ProductFormula);

void BM_Height(benchmark::State& state) {
  const auto p = ProjPoint::of({123456, -7890123, 45678901, 3});
  for (auto _ : state) benchmark::DoNotOptimize(height(p));
}
BENCHMARK(BM_Height);

void BM_WeilHyperplane(benchmark::State& state) {
  const auto p = ProjPoint::of({12, -35, 98});
  const auto form = LinearForm::of({3, 1, -2});
  const Place v = state.range(0) ? Place::finite(state.range(0)) : Place::infinity();
  for (auto _ : state) benchmark::DoNotOptimize(weil_hyperplane(p, form, v));
}
BENCHMARK(BM_WeilHyperplane)->Arg(0)->Arg(2)->Arg(7);

void BM_WeilArgument(benchmark::State& state) {
  const auto p = ProjPoint::of({12, -35, 98});
  const Target t = LinearForm::of({3, 1, -2});
  const Place v = Place::finite(7);
  for (auto _ : state) benchmark::DoNotOptimize(weil_argument(p, t, v));
}
BENCHMARK(BM_WeilArgument);

void BM_LogSumCompare(benchmark::State& state) {
  LogSum a, b;
  a.add(make_rat(3, 2), 4);
  a.add(1, 1000003);
  b.add(1, 8);
  b.add(1, 1000003);
  for (auto _ : state) benchmark::DoNotOptimize(LogSum::compare(a, b));
}
BENCHMARK(BM_LogSumCompare);

void BM_PositionCheck(benchmark::State& state) {
  const auto forms = p2_arrangement();
  const auto x = LinearSubvariety::ambient(2);
  for (auto _ : state) benchmark::DoNotOptimize(check_subgeneral(forms, x, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_PositionCheck)->Arg(2)->Arg(3);

void BM_QuangCombine(benchmark::State& state) {
  const std::vector<LinearForm> forms{LinearForm::of({1, 0, 0}), LinearForm::of({0, 1, 0}),
                                      LinearForm::of({1, 1, 0}), LinearForm::of({0, 0, 1})};
  const auto x = LinearSubvariety::ambient(2);
  const std::vector<Place> places{Place::infinity(), Place::finite(2)};
  for (auto _ : state) benchmark::DoNotOptimize(quang_combine(forms, x, places));
}
BENCHMARK(BM_QuangCombine);

}  // namespace

BENCHMARK_MAIN();
