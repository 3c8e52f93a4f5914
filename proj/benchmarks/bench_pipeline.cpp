#include <benchmark/benchmark.h>

#include "frameforge/electromagnetic.hpp"
#include "frameforge/energy.hpp"
#include "support.hpp"

using namespace ff_test;

static void BM_FrenetAnalytic(benchmark::State& st) {
  const auto c = AnalyticCurve::hopf_helix(0.6, 1.1);
  const auto [a, b] = c.default_interval();
  for (auto _ : st)
    benchmark::DoNotOptimize(frenet_frame(AnalyticSpec{c, a, b, static_cast<std::size_t>(st.range(0)), true}, DerivConfig{4}));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}
BENCHMARK(BM_FrenetAnalytic)->Arg(2001)->Arg(8001);

static void BM_FrenetSampled(benchmark::State& st) {
  const auto c = AnalyticCurve::hopf_helix(0.6, 1.1);
  const auto [a, b] = c.default_interval();
  const auto sc = sample_curve(c, a, b, static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(frenet_frame(sc, DerivConfig{4}));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}
BENCHMARK(BM_FrenetSampled)->Arg(2001);

static void BM_BuildCongruence(benchmark::State& st) {
  const auto spec = rot_spec(static_cast<std::size_t>(st.range(0)), 13);
  for (auto _ : st) benchmark::DoNotOptimize(build_congruence(spec));
}
BENCHMARK(BM_BuildCongruence)->Arg(81)->Arg(161)->Unit(benchmark::kMillisecond);

static void BM_Differentials(benchmark::State& st) {
  const auto g = build_congruence(rot_spec(static_cast<std::size_t>(st.range(0)), 13));
  for (auto _ : st) {
    const auto c = coefficients(g, DerivConfig{4});
    benchmark::DoNotOptimize(differentials(g, DerivConfig{4}));
    benchmark::DoNotOptimize(c);
  }
}
BENCHMARK(BM_Differentials)->Arg(81)->Arg(161)->Unit(benchmark::kMillisecond);

static void BM_MaxwellPipeline(benchmark::State& st) {
  const auto g = build_congruence(rot_spec(81, 13));
  for (auto _ : st) {
    const auto ctx = make_context(g, DerivConfig{4});
    const auto E = synthesize_electric(ctx);
    benchmark::DoNotOptimize(maxwell_residuals(E, ctx));
  }
}
BENCHMARK(BM_MaxwellPipeline)->Unit(benchmark::kMillisecond);

static void BM_Simpson(benchmark::State& st) {
  std::vector<double> f(static_cast<std::size_t>(st.range(0)) + 1);
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = std::sin(0.001 * static_cast<double>(i));
  for (auto _ : st) benchmark::DoNotOptimize(simpson(f, 0.001));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}
BENCHMARK(BM_Simpson)->Arg(2000)->Arg(1 << 16);
BENCHMARK_MAIN();
