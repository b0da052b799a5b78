#include <benchmark/benchmark.h>

#include "polyrank/harmonic.hpp"
#include "polyrank/rank.hpp"

using namespace polyrank;

namespace {

// dense-ish cubic in 8 variables, the shape the throughput target is quoted for
MultiPoly cubic8(const Ring& r) {
  return parse_poly("x1*x2*x3 + x2*x4*x5 + x3*x6*x7 + x5*x7*x8 + 2*x1*x8^2 + x4^2*x6 + x2*x3 + x8", r, 8);
}

void BM_CountValues(benchmark::State& state) {
  const Ring r = Ring::prime_field(3);
  const std::vector<MultiPoly> polys{cubic8(r)};
  const EnumOptions opts{kDefaultBudget, static_cast<unsigned>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(count_values(polys, opts));
  state.SetItemsProcessed(state.iterations() * 6561);
  state.counters["evals_per_minute"] =
      benchmark::Counter(static_cast<double>(state.iterations()) * 6561 * 60, benchmark::Counter::kIsRate);
}
BENCHMARK(BM_CountValues)->Arg(1)->Arg(4)->UseRealTime();

void BM_CollectionHistogram(benchmark::State& state) {
  const Ring r = Ring::prime_field(2);
  const PolyCollection c({parse_poly("x1*x2*x3 + x4*x5*x6 + x7*x8*x9", r, 12),
                          parse_poly("x1*x10 + x2*x11 + x3*x12 + x9", r, 12)});
  for (auto _ : state) benchmark::DoNotOptimize(value_histogram(c));
  state.SetItemsProcessed(state.iterations() * 4096);
}
BENCHMARK(BM_CollectionHistogram);

void BM_MultilinearBias(benchmark::State& state) {
  const Ring r = Ring::prime_field(3);
  const MultilinearForm f = multilinear_form(parse_poly("x1*x2*x3 + x2^2*x4 + x1*x3*x4", r, 4));
  for (auto _ : state) benchmark::DoNotOptimize(multilinear_bias(f));
}
BENCHMARK(BM_MultilinearBias);

void BM_QuadraticRank(benchmark::State& state) {
  const Ring r = Ring::prime_field(5);
  const MultiPoly q = parse_poly("x1*x2 + x3*x4 + x5^2 + 2*x6^2 + x1*x6 + 3*x2*x5 + x7*x8", r, 8);
  for (auto _ : state) benchmark::DoNotOptimize(quadratic_rank(q));
}
BENCHMARK(BM_QuadraticRank);

}  // namespace
BENCHMARK_MAIN();
