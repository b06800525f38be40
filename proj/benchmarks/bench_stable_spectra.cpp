#include <benchmark/benchmark.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "stable_spectra/bimeasure.hpp"
#include "stable_spectra/covariation.hpp"
#include "stable_spectra/harmonisable.hpp"
#include "stable_spectra/spectral_measure.hpp"
#include "stable_spectra/stable_core.hpp"

using namespace stable_spectra;

namespace {

DiscreteSpectralMeasure diagonal_pair() {
  const double h = std::numbers::sqrt2 / 2.0;
  return DiscreteSpectralMeasure(Mode::real, 2, {{{h, h}, 0.5}, {{-h, -h}, 0.5}});
}

void BM_SampleSasReal(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_sas_real(Alpha(1.5), 1.0, n, 42).values.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SampleSasReal)->Arg(1 << 12)->Arg(1 << 16)->Arg(1 << 18);

void BM_SampleIsotropic(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_isotropic_complex(Alpha(1.5), 1.0, n, 42).values.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SampleIsotropic)->Arg(1 << 16);

void BM_CheckerAxes(benchmark::State& state) {
  std::vector<double> w(static_cast<std::size_t>(state.range(0)), 1.0);
  const auto m = make_axes_measure(w);
  for (auto _ : state) benchmark::DoNotOptimize(check_additivity_condition(m).max_abs);
}
BENCHMARK(BM_CheckerAxes)->DenseRange(2, 5);

void BM_CheckerDiagonalPair(benchmark::State& state) {
  const auto m = diagonal_pair();
  for (auto _ : state) benchmark::DoNotOptimize(check_additivity_condition(m).max_abs);
}
BENCHMARK(BM_CheckerDiagonalPair);

void BM_Lemma1(benchmark::State& state) {
  const double p = state.range(0) / 10.0;
  for (auto _ : state) benchmark::DoNotOptimize(lemma1_check(1.0, p).sine.abs_err);
}
BENCHMARK(BM_Lemma1)->Arg(11)->Arg(15)->Arg(19);

void BM_Lemma2(benchmark::State& state) {
  const double p = state.range(0) / 10.0;
  for (auto _ : state) benchmark::DoNotOptimize(lemma2_check({1.0, 1.0}, p).modulus.abs_err);
}
BENCHMARK(BM_Lemma2)->Arg(8)->Arg(15)->Unit(benchmark::kMillisecond);

void BM_CovariationEstimate(benchmark::State& state) {
  const Alpha a(1.5);
  const auto x = sample_sas_real(a, 1.0, 100000, 1).values;
  for (auto _ : state) benchmark::DoNotOptimize(covariation_estimate(x, x, a, 1.2).value);
}
BENCHMARK(BM_CovariationEstimate)->Unit(benchmark::kMillisecond);

void BM_FourierCoefficient(benchmark::State& state) {
  ComplexMatrix F(3);
  F(0, 0) = 1.0;
  F(1, 1) = 0.6;
  F(2, 2) = 0.4;
  F(0, 2) = F(2, 0) = 0.3;
  const HarmonisableModel m(Alpha(1.5), {0.0, 1.0, 2.0}, F);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fourier_coefficient(m, 0.5, 1, std::numbers::pi).numeric);
  }
}
BENCHMARK(BM_FourierCoefficient);

}  // namespace

BENCHMARK_MAIN();
