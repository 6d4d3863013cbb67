#include <benchmark/benchmark.h>

#include "../tests/fixtures.hpp"
#include "makeev/osculating.hpp"
#include "makeev/sphere.hpp"
#include "makeev/variety.hpp"

using namespace makeev;

namespace {

Exec policy(const benchmark::State& state) { return state.range(0) == 0 ? Exec::serial : Exec::parallel; }

void label(benchmark::State& state) { state.SetLabel(state.range(0) == 0 ? "serial" : "parallel"); }

void BM_ResidualGrid(benchmark::State& state) {
  const TriangleVariety var(fixtures::random_curve(3), std::polar(1.0, fixtures::pi / 3));
  for (auto _ : state) benchmark::DoNotOptimize(var.residual_grid(policy(state)));
  label(state);
}

void BM_ChordScan(benchmark::State& state) {
  const auto ellipse = PlaneCurve::ellipse(2, 1);
  OsculatingOptions opt;
  opt.exec = policy(state);
  for (auto _ : state) benchmark::DoNotOptimize(find_chords(ellipse, 2.0, opt));
  label(state);
}

void BM_Obstruction(benchmark::State& state) {
  static const Counterexample ce = build_counterexample();
  ObstructionOptions opt;
  opt.exec = policy(state);
  for (auto _ : state) benchmark::DoNotOptimize(verify_obstruction(ce.f, ce.g, ce.h, ce.L, opt));
  label(state);
}

void BM_MinSpread(benchmark::State& state) {
  static const Counterexample ce = build_counterexample();
  const auto q = quadruple(0.05, 0.08);
  SpreadOptions opt;
  opt.exec = policy(state);
  for (auto _ : state) benchmark::DoNotOptimize(min_spread(ce.f, q, 32, 0, opt));
  label(state);
}

}  // namespace

BENCHMARK(BM_ResidualGrid)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ChordScan)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Obstruction)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_MinSpread)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
