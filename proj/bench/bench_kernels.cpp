// Serial reference kernels against their OpenMP counterparts.
// Thread count follows OMP_NUM_THREADS.

#include "divzeta/divisor_sieve.hpp"
#include "divzeta/kernels.hpp"
#include "divzeta/main_term.hpp"
#include "divzeta/selberg.hpp"

#include <benchmark/benchmark.h>

#include <cmath>
#include <complex>

using namespace divzeta;

namespace {

const DivisorTable& table() {
  static const DivisorTable t = sieve_dk(3, 1'100'000);
  return t;
}

template <auto Kernel>
void correlate(benchmark::State& state) {
  const auto x = static_cast<std::uint64_t>(state.range(0));
  table();
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(table().values(), x, 0, 200));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(x) * 201);
}

template <auto Kernel>
void window(benchmark::State& state) {
  const auto x = static_cast<std::uint64_t>(state.range(0));
  table();
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(table().values(), x, 500.0, 150.0));
}

template <auto Kernel>
void selberg(benchmark::State& state) {
  static const auto prefix = prefix_sums(table());
  const auto poly = residue_polynomial(3);
  const double h = 50.0;
  kernels::SelbergProblem p{prefix, [&](double t) { return expected_short_sum(poly, t, h); }, h, 100.0,
                            static_cast<double>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(p));
}

template <auto Kernel>
void simpson(benchmark::State& state) {
  const auto f = [](double t) { return std::cos(t) * std::exp(-1e-3 * t); };
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(f, 0.0, 1000.0, state.range(0)));
}

template <auto Kernel>
void pair_sum(benchmark::State& state) {
  const kernels::PairWeight w = [](std::int64_t a, std::int64_t n) {
    return std::polar(1.0, 20.0 * static_cast<double>(a) / static_cast<double>(n));
  };
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(table().values(), 50'000, 100'000, state.range(0), w));
}

} // namespace

BENCHMARK(correlate<kernels::serial::correlate_direct>)->Name("correlate_direct/serial")->Arg(100'000)->Arg(1'000'000);
BENCHMARK(correlate<kernels::omp::correlate_direct>)->Name("correlate_direct/omp")->Arg(100'000)->Arg(1'000'000);
BENCHMARK(window<kernels::serial::window_correlation>)->Name("window_correlation/serial")->Arg(1'000'000);
BENCHMARK(window<kernels::omp::window_correlation>)->Name("window_correlation/omp")->Arg(1'000'000);
BENCHMARK(selberg<kernels::serial::selberg_piecewise>)->Name("selberg_piecewise/serial")->Arg(100'000);
BENCHMARK(selberg<kernels::omp::selberg_piecewise>)->Name("selberg_piecewise/omp")->Arg(100'000);
BENCHMARK(simpson<kernels::serial::simpson>)->Name("simpson/serial")->Arg(1 << 20);
BENCHMARK(simpson<kernels::omp::simpson>)->Name("simpson/omp")->Arg(1 << 20);
BENCHMARK(pair_sum<kernels::serial::weighted_pair_sum>)->Name("weighted_pair_sum/serial")->Arg(20);
BENCHMARK(pair_sum<kernels::omp::weighted_pair_sum>)->Name("weighted_pair_sum/omp")->Arg(20);

BENCHMARK_MAIN();
