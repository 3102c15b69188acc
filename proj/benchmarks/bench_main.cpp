#include <benchmark/benchmark.h>

#include "fcheb/catalog.hpp"
#include "fcheb/continuation.hpp"
#include "fcheb/moments.hpp"
#include "fcheb/oval.hpp"
#include "fcheb/picard_fuchs.hpp"
#include "fcheb/sturm.hpp"
#include "fcheb/sweeps.hpp"
#include "fcheb/vspace.hpp"

using namespace fcheb;

namespace {

RatPoly poly_of_degree(int d) {
  std::vector<Rational> c;
  for (int k = 0; k <= d; ++k) c.push_back(Rational(k % 2 ? -(k + 1) : k + 1, 3));
  return RatPoly(std::move(c));
}

}  // namespace

static void BM_AbelianIntegrals(benchmark::State& state) {
  const auto c = get_case("1");
  for (auto _ : state) benchmark::DoNotOptimize(abelian_integrals(c, 0.07));
}
BENCHMARK(BM_AbelianIntegrals)->Unit(benchmark::kMillisecond);

static void BM_FuchsianResidual(benchmark::State& state) {
  const auto c = get_case("5");
  const auto grid = default_h_grid(c, 20);
  for (auto _ : state) benchmark::DoNotOptimize(residual_fuchsian(c, grid));
}
BENCHMARK(BM_FuchsianResidual)->Unit(benchmark::kMillisecond);

static void BM_ArgumentCount(benchmark::State& state) {
  const auto c = get_case("1");
  const auto a = application_space("1", static_cast<int>(state.range(0)));
  const auto e = table_element(c.system, poly_of_degree(a.deg_alpha), poly_of_degree(a.deg_beta), a.s);
  ContourSpec spec;
  contour_trace(e.lambda, e.omega, spec);  // cached trace, as in a sweep
  for (auto _ : state) benchmark::DoNotOptimize(count_zeros_argument(e, spec, a.dim + a.accuracy - 1, false));
}
BENCHMARK(BM_ArgumentCount)->Arg(3)->Arg(6)->Unit(benchmark::kMillisecond);

static void BM_IntervalCount(benchmark::State& state) {
  const auto c = get_case("2");
  const auto a = application_space("2", 4);
  const auto e = table_element(c.system, RatPoly({1, -3}), RatPoly({2, 1}), a.s);
  for (auto _ : state) benchmark::DoNotOptimize(count_zeros_sigma(e, c));
}
BENCHMARK(BM_IntervalCount)->Unit(benchmark::kMillisecond);

static void BM_QuarticReduction(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::map<MomentIndex, Rational> coef;
  for (const auto& key : spanning_set("6", n)) coef[key] = Rational(key.first + 2 * key.second + 1, 7);
  for (auto _ : state) benchmark::DoNotOptimize(exact_reduction("6", n, coef));
}
BENCHMARK(BM_QuarticReduction)->Arg(6)->Arg(12);

static void BM_Eigenframe(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(eigenframe(k, Rational(5, 6), Rational(7, 6), Rational(-3)));
}
BENCHMARK(BM_Eigenframe)->Arg(2)->Arg(5);

static void BM_SweepTrial(benchmark::State& state) {
  SweepConfig cfg;
  cfg.case_id = "4";
  cfg.n = 6;
  cfg.trials = 1;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    cfg.seed = ++seed;
    benchmark::DoNotOptimize(run_sweep(cfg));
  }
}
BENCHMARK(BM_SweepTrial)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
