#include <benchmark/benchmark.h>

#include "pipeline.hpp"
#include "qcs/inference.hpp"
#include "qcs/models.hpp"
#include "qcs/periodogram.hpp"
#include "qcs/ranks.hpp"

namespace {

using namespace qcs;

TimeSeriesMatrix make_input(std::size_t n) {
  RealMatrix A(2, 2);
  A(0, 1) = 0.5;
  A(1, 0) = 0.5;
  return simulate_var1(VARModel{A}, n, 1024, 17);
}

const QuantileGrid& grid5() {
  static const QuantileGrid g = validate_quantile_grid({0.05, 0.25, 0.5, 0.75, 0.95});
  return g;
}

void bench_ranks_clip(benchmark::State& state) {
  const TimeSeriesMatrix X = make_input(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    ClippedTensor clipped = clip_matrix(rank_matrix(X), grid5());
    benchmark::DoNotOptimize(clipped.bits.data());
  }
}

void bench_periodogram(benchmark::State& state) {
  const TimeSeriesMatrix X = make_input(static_cast<std::size_t>(state.range(0)));
  const ClippedTensor clipped = clip_matrix(rank_matrix(X), grid5());
  for (auto _ : state) {
    CCRPeriodogram p = ccr_periodogram_matrix(quantile_dft(clipped));
    benchmark::DoNotOptimize(p.values.raw());
  }
}

void bench_smoother(benchmark::State& state) {
  const TimeSeriesMatrix X = make_input(static_cast<std::size_t>(state.range(0)));
  const CCRPeriodogram p =
      ccr_periodogram_matrix(quantile_dft(clip_matrix(rank_matrix(X), grid5())));
  const KernelSpec kernel;
  const double b_n = default_bandwidth(X.n);
  for (auto _ : state) {
    SmoothedSpectrum s = smooth_periodogram_fourier(p, kernel, b_n);
    benchmark::DoNotOptimize(s.values.raw());
  }
}

void bench_bands(benchmark::State& state) {
  const TimeSeriesMatrix X = make_input(static_cast<std::size_t>(state.range(0)));
  const SmoothedSpectrum s = smooth_periodogram_fourier(
      ccr_periodogram_matrix(quantile_dft(clip_matrix(rank_matrix(X), grid5()))),
      KernelSpec{}, default_bandwidth(X.n));
  for (auto _ : state) {
    BandPair bands = ci_bands(s, 0.05);
    benchmark::DoNotOptimize(bands.spectrum.lo_re.data());
  }
}

void bench_full_pipeline(benchmark::State& state) {
  const TimeSeriesMatrix X = make_input(static_cast<std::size_t>(state.range(0)));
  cli::RunConfig config;
  for (auto _ : state) {
    cli::PipelineResult r = cli::run_pipeline(X, config);
    benchmark::DoNotOptimize(r.coherency.coherence.data());
  }
}

}  // namespace

BENCHMARK(bench_ranks_clip)->Arg(1 << 14)->Arg(1 << 16)->Unit(benchmark::kMillisecond);
BENCHMARK(bench_periodogram)->Arg(1 << 14)->Arg(1 << 16)->Unit(benchmark::kMillisecond);
BENCHMARK(bench_smoother)->Arg(1 << 14)->Arg(1 << 16)->Unit(benchmark::kMillisecond);
BENCHMARK(bench_bands)->Arg(1 << 14)->Arg(1 << 16)->Unit(benchmark::kMillisecond);
BENCHMARK(bench_full_pipeline)->Arg(1 << 14)->Arg(1 << 16)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
