#include <benchmark/benchmark.h>

#include "dkz/padic_eval.hpp"

using namespace dkz;

namespace {

// Dense product of two powers of a linear form in 1 + 4 variables.
void BM_LaurentMultiply(benchmark::State& state) {
  const VarLayout layout{1, 4};
  const LaurentPoly f = LaurentPoly::parse("t1 + -1 * z1 + 2 * z2 + z3 + -3 * z4", layout);
  const auto k = static_cast<std::uint64_t>(state.range(0));
  const LaurentPoly a = f.power(k), b = f.power(k + 1);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
  state.counters["terms"] = static_cast<double>((a * b).size());
}
BENCHMARK(BM_LaurentMultiply)->Arg(4)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

// Coefficient extraction from the factored master polynomial without expanding it.
void BM_FactoredCoeff(benchmark::State& state) {
  const KZParams P = make_params(7, 3, 1);
  const int s = static_cast<int>(state.range(0));
  const FactoredPoly phi = master_polynomial(P, s).factored;
  const auto pe = static_cast<std::int64_t>(P.pe(s));
  for (auto _ : state) benchmark::DoNotOptimize(phi.coeff_t(pe - 1));
}
BENCHMARK(BM_FactoredCoeff)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

// Phi_s(t, a) and its Hasse-Witt matrix at a point of the 13-adic degree-2 extension.
void BM_PointHasseWitt(benchmark::State& state) {
  const KZParams P = make_params(13, 3, 2);
  const UnramifiedRing R(ModulusContext(13, 6), 2);
  const auto pts = find_domain_points(P, R, 1, 1);
  const int s = static_cast<int>(state.range(0));
  for (auto _ : state) {
    KzPoint kp(P, pts[0].a);
    benchmark::DoNotOptimize(kp.A(s));
  }
}
BENCHMARK(BM_PointHasseWitt)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_RatioSequence(benchmark::State& state) {
  const KZParams P = make_params(7, 3, 1);
  const UnramifiedRing R(ModulusContext(7, 6), 1);
  const auto pts = find_domain_points(P, R, 1, 1);
  for (auto _ : state) {
    PointPipeline pp(P, pts[0]);
    benchmark::DoNotOptimize(ratio_sequence(pp, 4));
  }
}
BENCHMARK(BM_RatioSequence)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
