// Serial reference kernels against their OpenMP versions.

#include <numbers>
#include <vector>

#include <benchmark/benchmark.h>

#include "gup/bounds.hpp"
#include "gup/constants.hpp"
#include "gup/parallel.hpp"

namespace {

const gup::PendulumConfig pendulum{gup::constants::pendulum_mass, 2.9954,
                                   gup::constants::pendulum_gravity};

std::vector<double> angles(std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = 0.01 + 1.4 * static_cast<double>(i) / n;
  return out;
}

template <bool Parallel>
void BM_AlphaGrid(benchmark::State& state) {
  const auto grid = gup::log_grid(1e-4, 1e8, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto out = Parallel ? gup::kernels::parallel::alpha_grid(1e-2, 7.32e26, grid)
                        : gup::kernels::serial::alpha_grid(1e-2, 7.32e26, grid);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void BM_PeriodGrid(benchmark::State& state) {
  const auto phis = angles(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto out = Parallel ? gup::kernels::parallel::period_grid(pendulum, 1e-4, phis, 1e-10)
                        : gup::kernels::serial::period_grid(pendulum, 1e-4, phis, 1e-10);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void BM_GkSeries(benchmark::State& state) {
  const gup::OscillatorModel model(1.0, 1.0, 1.0, 2e-4);
  const std::size_t dim = gup::gk_dimension(model, 4.0);
  const auto ops = gup::build_truncated_operators(model, dim);
  const auto gk = gup::gazeau_klauder_state(model, 4.0, 0.0, dim);
  std::vector<double> times(static_cast<std::size_t>(state.range(0)));
  for (std::size_t i = 0; i < times.size(); ++i)
    times[i] = 2.0 * std::numbers::pi * static_cast<double>(i) / times.size();
  for (auto _ : state) {
    auto out = Parallel ? gup::kernels::parallel::gk_position_series(ops, model, gk, times)
                        : gup::kernels::serial::gk_position_series(ops, model, gk, times);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_AlphaGrid<false>)->Arg(1 << 16)->Name("alpha_grid/serial");
BENCHMARK(BM_AlphaGrid<true>)->Arg(1 << 16)->Name("alpha_grid/openmp")->UseRealTime();
BENCHMARK(BM_PeriodGrid<false>)->Arg(256)->Name("period_grid/serial");
BENCHMARK(BM_PeriodGrid<true>)->Arg(256)->Name("period_grid/openmp")->UseRealTime();
BENCHMARK(BM_GkSeries<false>)->Arg(1024)->Name("gk_position_series/serial");
BENCHMARK(BM_GkSeries<true>)->Arg(1024)->Name("gk_position_series/openmp")->UseRealTime();

BENCHMARK_MAIN();
