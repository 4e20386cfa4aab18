#include <benchmark/benchmark.h>

#include <cmath>

#include "diophlab/bestapprox.hpp"
#include "diophlab/cfrac.hpp"
#include "diophlab/construct.hpp"
#include "diophlab/dimension.hpp"
#include "diophlab/latinv.hpp"

using namespace diophlab;

namespace {

void BM_BestApproximations(benchmark::State& state) {
  const RatPoint x(Rational(Integer("1414213562373095"), Integer("1000000000000000")) - 1,
                   Rational(Integer("1732050807568877"), Integer("1000000000000000")) - 1);
  const Integer qmax(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(bestapprox::best_approximations(x, qmax));
}
BENCHMARK(BM_BestApproximations)->Arg(100)->Arg(10000)->Arg(1000000);

void BM_Profile(benchmark::State& state) {
  const auto seq = bestapprox::best_approximations(RatPoint(Rational(3, 7), Rational(2, 7)), 300);
  for (auto _ : state) benchmark::DoNotOptimize(bestapprox::wx_profile(seq));
}
BENCHMARK(BM_Profile);

void BM_ShortestVectorOracle(benchmark::State& state) {
  const RatPoint x(Rational(1627, 6128), Rational(2435, 3064));
  const Rational e = bestapprox::exp3_dyadic(static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(bestapprox::shortest_vector_oracle(x, e));
}
BENCHMARK(BM_ShortestVectorOracle)->Arg(1)->Arg(3)->Arg(6);

void BM_Invariants(benchmark::State& state) {
  const PrimVec v(Integer("123456789"), Integer("987654321"), Integer("1000000007"));
  for (auto _ : state) benchmark::DoNotOptimize(latinv::invariants(v));
}
BENCHMARK(BM_Invariants);

void BM_ReducedBasis(benchmark::State& state) {
  const PrimVec v(Integer("123456789"), Integer("987654321"), Integer("1000000007"));
  for (auto _ : state) benchmark::DoNotOptimize(latinv::reduced_basis(v, NormChoice::sup));
}
BENCHMARK(BM_ReducedBasis);

void BM_CantorChildren(benchmark::State& state) {
  const auto first = construct::cantor_children(PrimVec(0, 0, 1), Rational(1, 8), 1);
  const PrimVec u = first.children.front().u;
  for (auto _ : state) benchmark::DoNotOptimize(construct::cantor_children(u, Rational(1, 8), 1, 4));
}
BENCHMARK(BM_CantorChildren)->Unit(benchmark::kMillisecond);

void BM_CantorExactDim(benchmark::State& state) {
  double d = 0.01;
  for (auto _ : state) {
    benchmark::DoNotOptimize(dimension::cantor_exact_dim(d));
    d = d < 0.99 ? d + 0.01 : 0.01;
  }
}
BENCHMARK(BM_CantorExactDim);

void BM_DnBounds(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(dimension::dn_bounds(1e9));
}
BENCHMARK(BM_DnBounds);

void BM_Neighbors(benchmark::State& state) {
  const cfrac::Frac v(Integer("832040"), Integer("1346269"));
  for (auto _ : state) benchmark::DoNotOptimize(cfrac::neighbors(v));
}
BENCHMARK(BM_Neighbors);

void BM_DnTree(benchmark::State& state) {
  cfrac::DnTreeConfig cfg;
  cfg.depth = static_cast<int>(state.range(0));
  cfg.expand = 3;
  for (auto _ : state) benchmark::DoNotOptimize(cfrac::dn_tree(cfrac::Frac(1, 2), cfg));
}
BENCHMARK(BM_DnTree)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_LowerCert(benchmark::State& state) {
  const auto tree = dimension::two_piece_tree(Rational(1, 3), Rational(1, 4), static_cast<int>(state.range(0)));
  dimension::LowerCertOptions opts;
  opts.rho = Rational(1, 4);
  for (auto _ : state) benchmark::DoNotOptimize(dimension::lower_cert(tree, 0.5, opts));
}
BENCHMARK(BM_LowerCert)->Arg(6)->Arg(10)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
