#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "stable_spectra/errors.hpp"
#include "stable_spectra/harmonisable.hpp"
#include "test_support.hpp"

using namespace stable_spectra;
using cd = std::complex<double>;

namespace {

constexpr double kPi = std::numbers::pi;

HarmonisableModel identity_model(std::vector<double> freqs) {
  ComplexMatrix F(freqs.size());
  for (std::size_t j = 0; j < freqs.size(); ++j) F(j, j) = 1.0;
  return HarmonisableModel(Alpha(1.5), std::move(freqs), F);
}

}  // namespace

TEST(Model, Validation) {
  EXPECT_THROW(HarmonisableModel(Alpha(1.5), {0.0, 1.0}, ComplexMatrix(3)), ValidationError);
  const auto law = test_support::load_model("model_diagonal.json").increments();
  ASSERT_TRUE(law.has_value());
  EXPECT_THROW(HarmonisableModel(Alpha(1.5), {0.0, 1.0, 3.0}, ComplexMatrix(3), law), ValidationError);
  EXPECT_THROW(HarmonisableModel(Alpha(1.6), {0.0, 1.0, 2.0}, ComplexMatrix(3), law), ValidationError);
}

TEST(CovariationFunction, Invariances) {
  const auto diag = test_support::load_model("model_diagonal.json");
  EXPECT_NEAR(std::abs(covariation_function(diag, 1.0, 0.0) - covariation_function(diag, 2.0, 1.0)),
              0.0, 1e-14);
  const auto lattice = test_support::load_model("model_lattice.json");
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int i = 0; i < 100; ++i) {
    const double s = u(gen), t = u(gen);
    EXPECT_LE(std::abs(covariation_function(lattice, s + kPi, t + kPi) -
                       covariation_function(lattice, s, t)),
              1e-12);
  }
  const auto empty = test_support::load_model("model_empty.json");
  EXPECT_EQ(covariation_function(empty, 0.3, -1.2), cd(0.0, 0.0));
}

TEST(CovariationFunction, DiagonalMatchesBilinearForm) {
  const auto diag = test_support::load_model("model_diagonal.json");
  for (double t : {-1.0, 0.0, 0.7, 3.0}) {
    ComplexVector z;
    for (double l : diag.frequencies()) z.push_back(std::polar(1.0, t * l));
    const cd c = covariation_function(diag, t, t);
    EXPECT_NEAR(std::abs(c - bilinear_form(diag.F(), z, diag.alpha())), 0.0, 1e-13);
    EXPECT_NEAR(c.imag(), 0.0, 1e-14);
    EXPECT_GE(c.real(), 0.0);
  }
}

TEST(Classify, CorpusModels) {
  const auto diag = classify(test_support::load_model("model_diagonal.json"));
  EXPECT_EQ(diag.verdict, Verdict::stationary);
  ASSERT_EQ(diag.lines.size(), 1u);
  EXPECT_EQ(diag.lines[0].gamma, 0.0);

  const auto lattice = classify(test_support::load_model("model_lattice.json"));
  EXPECT_EQ(lattice.verdict, Verdict::periodic);
  ASSERT_TRUE(lattice.period.has_value());
  EXPECT_NEAR(*lattice.period, kPi, 1e-12);
  ASSERT_EQ(lattice.lines.size(), 3u);
  EXPECT_NEAR(lattice.lines[0].gamma, -2.0, 1e-12);
  EXPECT_NEAR(lattice.lines[2].gamma, 2.0, 1e-12);

  const auto ap = classify(test_support::load_model("model_almost_periodic.json"));
  EXPECT_EQ(ap.verdict, Verdict::almost_periodic);
  EXPECT_FALSE(ap.period.has_value());

  // One off-diagonal line sqrt2: the support sits on the lattice sqrt2 Z.
  const auto mixed = classify(test_support::load_model("model_mixed.json"));
  EXPECT_EQ(mixed.verdict, Verdict::periodic);
  ASSERT_TRUE(mixed.period.has_value());
  EXPECT_NEAR(*mixed.period, 2.0 * kPi / std::numbers::sqrt2, 1e-9);
}

TEST(Classify, AnyOffDiagonalMassIsNotStationary) {
  ComplexMatrix F(2);
  F(0, 0) = F(1, 1) = 1.0;
  F(0, 1) = 1e-6;
  const HarmonisableModel m(Alpha(1.5), {0.0, 3.0}, F);
  EXPECT_NE(classify(m).verdict, Verdict::stationary);
  EXPECT_EQ(classify(m, 1e-3).verdict, Verdict::stationary);
}

TEST(Classify, PeriodicInvariance) {
  for (const char* name : {"model_lattice.json", "model_mixed.json"}) {
    const auto m = test_support::load_model(name);
    const auto r = classify(m);
    ASSERT_TRUE(r.period.has_value()) << name;
    const double T = *r.period;
    std::mt19937_64 gen(2);
    std::uniform_real_distribution<double> u(-20.0, 20.0);
    for (int i = 0; i < 100; ++i) {
      const double s = u(gen), t = u(gen);
      EXPECT_LE(std::abs(covariation_function(m, s + T, t + T) - covariation_function(m, s, t)), 1e-10);
    }
    for (const auto& line : r.lines) EXPECT_TRUE(on_lattice(line.gamma, T)) << line.gamma;
  }
}

TEST(FourierCoefficient, Examples) {
  const auto two = identity_model({0.0, 2.0});
  const auto a0 = fourier_coefficient(two, 0.0, 0, kPi);
  EXPECT_NEAR(std::abs(a0.numeric - cd(2.0)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(a0.predicted - cd(2.0)), 0.0, 1e-15);
  const auto a1 = fourier_coefficient(two, 0.0, 1, kPi);
  EXPECT_LE(std::abs(a1.numeric), 1e-12);
  EXPECT_EQ(a1.predicted, cd(0.0, 0.0));

  const auto lattice = test_support::load_model("model_lattice.json");
  for (int k = -3; k <= 3; ++k) {
    const auto c = fourier_coefficient(lattice, 0.4, k, kPi);
    EXPECT_LE(std::abs(c.numeric - c.predicted), 1e-10) << "k = " << k;
  }
  EXPECT_GT(std::abs(fourier_coefficient(lattice, 0.4, 1, kPi).predicted), 0.1);
  EXPECT_THROW(fourier_coefficient(lattice, 0.0, 0, 0.0), ParameterError);
}

TEST(Bohr, Examples) {
  const auto diag = test_support::load_model("model_diagonal.json");
  for (double M : {1.0, 7.5, 100.0}) {
    EXPECT_NEAR(std::abs(bohr_coefficient(diag, 0.0, 0.0, M) - cd(2.0)), 0.0, 1e-14);
  }
  const auto ap = test_support::load_model("model_almost_periodic.json");
  const double tau = 0.6;
  const cd limit = bohr_limit(ap, tau, std::numbers::sqrt2);
  EXPECT_NEAR(std::abs(limit - std::polar(1.0, tau * std::numbers::sqrt2) * ap.F()(2, 0)), 0.0,
              1e-15);
  EXPECT_LE(std::abs(bohr_coefficient(ap, tau, std::numbers::sqrt2, 1e4) - limit), 1e-3);
  // Off the difference set the average decays like 1/M.
  const double g = 0.5;
  const double b1 = std::abs(bohr_coefficient(ap, tau, g, 1000.0));
  EXPECT_LE(b1, 5.0 / 1000.0);
  EXPECT_EQ(std::abs(bohr_limit(ap, tau, g)), 0.0);
}

TEST(Fejer, Examples) {
  const auto lattice = test_support::load_model("model_lattice.json");
  const auto f0 = fejer_average(lattice, 0.3, 0.8, 0, 2.0);
  EXPECT_NEAR(std::abs(f0.value - covariation_function(lattice, 1.1, 0.3)), 0.0, 1e-14);
  for (int N : {0, 1, 10, 100}) {
    const auto f = fejer_average(lattice, 0.3, 0.8, N, kPi);
    EXPECT_LE(std::abs(f.value - f.masked_limit), 1e-12) << "N = " << N;
    EXPECT_LE(std::abs(f.value - covariation_function(lattice, 1.1, 0.3)), 1e-12);
  }
  EXPECT_THROW(fejer_average(lattice, 0.0, 0.0, -1, kPi), ParameterError);
}

TEST(Fejer, MaskedLimitIsLineRestrictedCovariation) {
  const auto ap = test_support::load_model("model_almost_periodic.json");
  const double T = 2.0 * kPi;  // lattice Z: keeps gamma = 0 and 1, drops sqrt2
  ComplexMatrix masked(ap.size());
  for (std::size_t j = 0; j < ap.size(); ++j) {
    for (std::size_t k = 0; k < ap.size(); ++k) {
      if (on_lattice(ap.frequencies()[j] - ap.frequencies()[k], T)) masked(j, k) = ap.F()(j, k);
    }
  }
  const HarmonisableModel restricted(ap.alpha(), ap.frequencies(), masked);
  const auto f = fejer_average(ap, 0.4, 1.3, 50, T);
  EXPECT_NEAR(std::abs(f.masked_limit - covariation_function(restricted, 1.7, 0.4)), 0.0, 1e-14);
}

TEST(Fejer, OffLatticeLineDecaysLikeDirichletKernel) {
  // One off-lattice line at distance delta: |value - limit| = |D_N(T delta)| |F|.
  const auto mixed = test_support::load_model("model_mixed.json");
  const double T = 2.0;
  for (int N : {100, 200}) {
    const auto f = fejer_average(mixed, 0.0, 0.0, N, T);
    const double x = T * std::numbers::sqrt2;
    const double dirichlet = std::sin((2 * N + 1) * x / 2.0) / ((2 * N + 1) * std::sin(x / 2.0));
    EXPECT_NEAR(std::abs(f.value - f.masked_limit), std::abs(dirichlet) * 0.25, 1e-12) << N;
  }
}

TEST(Synthesize, CapabilityAndShapes) {
  const auto mixed = test_support::load_model("model_mixed.json");
  const std::vector<double> times{0.0, 1.0};
  EXPECT_THROW(synthesize_paths(mixed, times, 5, 1), CapabilityError);

  const auto diag = test_support::load_model("model_diagonal.json");
  const auto p = synthesize_paths(diag, times, 7, 3);
  EXPECT_EQ(p.n_paths, 7u);
  EXPECT_EQ(p.values.size(), 14u);
  const auto q = synthesize_paths(diag, times, 7, 3);
  EXPECT_EQ(p.values, q.values);

  const IncrementLaw zero({0.0, 1.0}, DiscreteSpectralMeasure::empty(Mode::real, 2), Alpha(1.5));
  const auto z = synthesize_paths(HarmonisableModel(zero), times, 4, 1);
  for (cd v : z.values) EXPECT_EQ(v, cd(0.0, 0.0));

  const IncrementLaw single({0.0}, test_support::load_measure("standard_pair.json"), Alpha(1.5));
  const std::vector<double> many{-3.0, 0.0, 2.5, 10.0};
  const auto c = synthesize_paths(HarmonisableModel(single), many, 20, 5);
  for (std::size_t r = 0; r < 20; ++r) {
    for (std::size_t t = 1; t < many.size(); ++t) EXPECT_EQ(c.at(r, t), c.at(r, 0));
  }
}

TEST(Synthesize, RecoversCovariationFunction) {
  const auto diag = test_support::load_model("model_diagonal.json");
  const std::vector<double> times{0.0, 1.0};
  const auto paths = synthesize_paths(diag, times, 100000, 77);
  const auto x1 = paths.at_time(1);
  const auto x0 = paths.at_time(0);
  const auto est = covariation_estimate(x1, x0, diag.alpha(), default_moment_order(diag.alpha()),
                                        MomentLaw::real);
  EXPECT_LE(std::abs(est.value - covariation_function(diag, 1.0, 0.0)), 3.0 * est.std_error);
}
