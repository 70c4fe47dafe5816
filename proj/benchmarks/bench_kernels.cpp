#include <benchmark/benchmark.h>

#include <cmath>

#include "nlslab/fft.hpp"
#include "nlslab/field.hpp"
#include "nlslab/morawetz.hpp"
#include "nlslab/solver.hpp"
#include "nlslab/symbol.hpp"

namespace {

nlslab::ComplexField gaussian(std::size_t n) {
  const nlslab::Grid1D g(40.0, n);
  return nlslab::ComplexField::from_function(g, [](double x) { return std::exp(-x * x); });
}

void BM_ForwardFft(benchmark::State& state) {
  const auto f = gaussian(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(nlslab::fft::spectrum(f));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ForwardFft)->RangeMultiplier(4)->Range(256, 16384)->Complexity(benchmark::oNLogN);

void BM_ApplySymbol(benchmark::State& state) {
  const auto f = gaussian(static_cast<std::size_t>(state.range(0)));
  const auto sym = nlslab::SymbolSpec::bracket_power(0.5);
  for (auto _ : state) benchmark::DoNotOptimize(nlslab::apply_symbol(f, sym));
}
BENCHMARK(BM_ApplySymbol)->Arg(1024)->Arg(4096);

void BM_StrangStep(benchmark::State& state) {
  auto f = gaussian(static_cast<std::size_t>(state.range(0)));
  const auto cfg = nlslab::SolverConfig::with_degree(3, 1e-3, 1.0, 0.01);
  for (auto _ : state) {
    f = nlslab::strang_step(f, 1e-3, cfg);
    benchmark::DoNotOptimize(f);
  }
}
BENCHMARK(BM_StrangStep)->Arg(1024)->Arg(4096);

void BM_InteractionAction(benchmark::State& state) {
  const nlslab::Grid1D g(40.0, 1024);
  const auto f = nlslab::ComplexField::from_function(g, [](double x) {
    return std::exp(-(x - 3) * (x - 3)) * std::polar(1.0, -2 * x) +
           std::exp(-(x + 3) * (x + 3)) * std::polar(1.0, 2 * x);
  });
  nlslab::MorawetzConfig mc;
  mc.n_sub = static_cast<std::size_t>(state.range(0));
  mc.window = 8.0;
  mc.max_sampling_loss = 1.0;
  for (auto _ : state) benchmark::DoNotOptimize(nlslab::interaction_action(f, mc));
}
BENCHMARK(BM_InteractionAction)->Arg(16)->Arg(32)->Arg(48)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
