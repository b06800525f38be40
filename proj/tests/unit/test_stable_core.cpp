#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "stable_spectra/errors.hpp"
#include "stable_spectra/stable_core.hpp"

using namespace stable_spectra;
using cd = std::complex<double>;

namespace {

// Closed form of c(p) via the Beta-function value of the angular integral,
// int_0^2pi |cos|^p = 4 sqrt(pi) Gamma((p+1)/2) / (2 Gamma(p/2 + 1)).
double c_closed(double p) {
  const double angular =
      2.0 * std::sqrt(std::numbers::pi) * std::tgamma(0.5 * (p + 1.0)) / std::tgamma(0.5 * p + 1.0);
  return gamma_cos(p) / p * angular;
}

std::complex<double> empirical_cf(const std::vector<double>& xs, double theta) {
  cd sum = 0.0;
  for (double x : xs) sum += std::polar(1.0, theta * x);
  return sum / static_cast<double>(xs.size());
}

}  // namespace

TEST(Alpha, RejectsOutsideOpenInterval) {
  EXPECT_THROW(Alpha(1.0), ParameterError);
  EXPECT_THROW(Alpha(2.0), ParameterError);
  EXPECT_THROW(Alpha(std::nan("")), ParameterError);
  EXPECT_DOUBLE_EQ(Alpha(1.5).value(), 1.5);
}

TEST(SignedPower, Examples) {
  EXPECT_DOUBLE_EQ(signed_power(1.0, 0.5), 1.0);
  EXPECT_NEAR(signed_power(-2.0, 0.5), -1.41421356, 1e-8);
  const cd v = signed_power(cd(0.0, 1.0), 0.5);
  EXPECT_NEAR(v.real(), 0.0, 1e-15);
  EXPECT_NEAR(v.imag(), -1.0, 1e-15);
  EXPECT_EQ(signed_power(0.0, 0.7), 0.0);
  EXPECT_EQ(signed_power(cd(0.0, 0.0), 0.7), cd(0.0, 0.0));
}

TEST(SignedPower, RejectsNonPositiveExponent) {
  EXPECT_THROW(signed_power(1.0, 0.0), ParameterError);
  EXPECT_THROW(signed_power(cd(1.0, 1.0), -0.5), ParameterError);
}

TEST(SignedPower, ModulusLaw) {
  for (cd z : {cd(3.0, -4.0), cd(-0.2, 0.1), cd(1e-3, 7.0)}) {
    for (double beta : {0.3, 0.5, 1.0, 1.7}) {
      EXPECT_NEAR(std::abs(signed_power(z, beta)), std::pow(std::abs(z), beta),
                  1e-14 * std::max(1.0, std::pow(std::abs(z), beta)));
    }
  }
}

TEST(Constants, GammaOracles) {
  const auto c = constants(Alpha(1.5), 1.0);
  EXPECT_NEAR(c.psi_alpha, 2.678938534707748, 1e-12);
  EXPECT_NEAR(c.s_alpha_real, 1.705465240152388, 1e-12);
  EXPECT_NEAR(c.s_alpha_iso, 1.339469267353874, 1e-12);
  EXPECT_NEAR(c.c0, 0.556417894449382, 1e-12);
  EXPECT_NEAR(c.c, 2.0 * std::numbers::pi, 1e-10);
  EXPECT_NEAR(c.rho_p, c.c, 1e-15);
  EXPECT_NEAR(isotropic_c0(Alpha(1.2)), 0.600708421055015, 1e-12);
  EXPECT_NEAR(isotropic_c0(Alpha(1.8)), 0.520485327183318, 1e-12);
}

TEST(Constants, PlanarConstantMatchesClosedForm) {
  EXPECT_NEAR(planar_constant(0.8), 7.571185388774127, 1e-10);
  EXPECT_NEAR(planar_constant(1.5), 5.842243202931944, 1e-10);
  for (double p : {0.3, 0.8, 1.1, 1.5, 1.9}) {
    EXPECT_NEAR(planar_constant(p), c_closed(p), 1e-10 * c_closed(p)) << "p = " << p;
  }
}

TEST(Constants, RejectsMomentOrderAtOrAboveAlpha) {
  EXPECT_THROW(constants(Alpha(1.2), 1.2), ParameterError);
  EXPECT_THROW(s_alpha_real(Alpha(1.5), 1.6), ParameterError);
}

TEST(Constants, RealMomentBelowPsi) {
  for (int k = 1; k <= 9; ++k) {
    const Alpha a(1.0 + 0.1 * k);
    EXPECT_LE(s_alpha_real(a, 1.0), psi_alpha(a)) << "alpha = " << a.value();
  }
}

TEST(SampleReal, ZeroScaleGivesZeros) {
  const auto b = sample_sas_real(Alpha(1.5), 0.0, 17, 3);
  for (double v : b.values) EXPECT_EQ(v, 0.0);
}

TEST(SampleReal, DeterministicUnderSeed) {
  const auto a = sample_sas_real(Alpha(1.3), 2.0, 10000, 99);
  const auto b = sample_sas_real(Alpha(1.3), 2.0, 10000, 99);
  const auto c = sample_sas_real(Alpha(1.3), 2.0, 10000, 100);
  EXPECT_EQ(a.values, b.values);
  EXPECT_NE(a.values, c.values);
}

TEST(SampleReal, CharacteristicFunctionAndSignBalance) {
  const auto b = sample_sas_real(Alpha(1.5), 1.0, 200000, 1234567);
  for (double theta : {0.5, 1.0, 2.0}) {
    const double model = std::exp(-std::pow(theta, 1.5));
    EXPECT_LE(std::abs(empirical_cf(b.values, theta) - model), 0.01) << "theta = " << theta;
  }
  double signs = 0.0;
  for (double v : b.values) signs += v > 0 ? 1.0 : -1.0;
  EXPECT_LE(std::abs(signs / b.values.size()), 0.01);
}

TEST(SampleReal, LightMomentMatchesConstant) {
  for (double a : {1.2, 1.5, 1.8}) {
    const auto b = sample_sas_real(Alpha(a), 2.0, 100000, 7);
    double m = 0.0;
    for (double v : b.values) m += std::sqrt(std::abs(v));
    m /= b.values.size();
    EXPECT_NEAR(m / (s_alpha_real(Alpha(a), 0.5) * std::sqrt(2.0)), 1.0, 0.03) << "alpha = " << a;
  }
}

TEST(PositiveStable, LaplaceTransform) {
  Rng rng(11);
  const double beta = 0.75;
  const int n = 200000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += std::exp(-draw_positive_stable(rng, beta));
  EXPECT_NEAR(sum / n, std::exp(-1.0), 0.005);
}

TEST(SampleIsotropic, ZeroScaleGivesZeros) {
  const auto b = sample_isotropic_complex(Alpha(1.5), 0.0, 5, 1);
  for (cd v : b.values) EXPECT_EQ(v, cd(0.0, 0.0));
}

TEST(SampleIsotropic, RotationInvarianceAndMoment) {
  const auto b = sample_isotropic_complex(Alpha(1.5), 1.0, 200000, 1234567);
  auto cf = [&](cd theta) {
    cd sum = 0.0;
    for (cd z : b.values) sum += std::polar(1.0, (std::conj(theta) * z).real());
    return sum / static_cast<double>(b.values.size());
  };
  const cd theta(0.8, 0.3);
  const cd rotated = theta * std::polar(1.0, std::numbers::pi / 3.0);
  EXPECT_LE(std::abs(cf(theta) - cf(rotated)), 0.01);
  EXPECT_LE(std::abs(cf(theta) - std::exp(-std::pow(0.5 * std::abs(theta), 1.5))), 0.01);

  // Orders with 2p < alpha, where |Z|^p has finite variance.
  for (double p : {0.5, 0.75}) {
    double m = 0.0;
    for (cd z : b.values) m += std::pow(std::abs(z), p);
    m /= b.values.size();
    EXPECT_NEAR(m / s_alpha_iso(Alpha(1.5), p), 1.0, 0.02) << "p = " << p;
  }
}

TEST(SineIdentity, SpotValues) {
  const auto r = lemma1_check(1.0, 1.5);
  EXPECT_NEAR(r.sine.closed_form, std::sqrt(2.0 * std::numbers::pi), 1e-12);
  EXPECT_LE(r.sine.abs_err, 1e-6);
  const auto zero = lemma1_check(0.0, 1.5);
  EXPECT_EQ(zero.sine.numeric, 0.0);
  EXPECT_EQ(zero.sine.closed_form, 0.0);
  const auto neg = lemma1_check(-1.0, 1.5);
  EXPECT_NEAR(neg.sine.closed_form, -2.50663, 1e-5);
  EXPECT_NEAR(neg.sine.numeric, -r.sine.numeric, 1e-15);
}

TEST(SineIdentity, Grid) {
  for (double s : {-2.0, -1.0, -0.5, 0.5, 1.0, 2.0}) {
    for (double p : {1.1, 1.5, 1.9}) {
      const auto r = lemma1_check(s, p);
      EXPECT_LE(r.sine.abs_err, 1e-6) << "s = " << s << " p = " << p;
      EXPECT_LE(r.cosine.abs_err, 1e-6) << "s = " << s << " p = " << p;
    }
  }
}

TEST(SineIdentity, RejectsOrderOutsideRange) {
  EXPECT_THROW(lemma1_check(1.0, 0.9), ParameterError);
  EXPECT_THROW(lemma1_check(1.0, 2.0), ParameterError);
}

TEST(FractionalIntegrals, IndependentOracles) {
  EXPECT_NEAR(sine_power_integral(1.0, 0.5), std::sqrt(0.5 * std::numbers::pi), 1e-10);
  // int_0^inf (1 - cos t) / t^2 dt = pi / 2
  EXPECT_NEAR(one_minus_cos_power_integral(1.0, 1.0), 0.5 * std::numbers::pi, 1e-10);
}

TEST(PlanarIdentity, ClosedFormsAndRotation) {
  const auto one = lemma2_check(cd(1.0, 0.0), 1.5);
  EXPECT_NEAR(one.modulus.numeric / one.modulus.closed_form, 1.0, 1e-4);
  const auto rot = lemma2_check(std::polar(1.0, 0.9), 1.5);
  EXPECT_LE(std::abs(one.modulus.numeric - rot.modulus.numeric), 1e-4);

  const auto i = lemma2_check(cd(0.0, 1.0), 1.5);
  const double pc = 1.5 * planar_constant(1.5);
  EXPECT_NEAR(i.signed_power.closed_form.real(), 0.0, 1e-12);
  EXPECT_NEAR(i.signed_power.closed_form.imag(), -pc, 1e-12);
}

TEST(PlanarIdentity, Grid) {
  for (cd z : {cd(1.0, 0.0), cd(0.0, 1.0), cd(1.0, 1.0)}) {
    for (double p : {0.8, 1.5}) {
      const auto r = lemma2_check(z, p);
      EXPECT_LE(r.modulus.abs_err, 1e-4) << z << " p = " << p;
      EXPECT_LE(r.signed_power.abs_err, 1e-4) << z << " p = " << p;
    }
  }
}

TEST(PlanarIdentity, RejectsZero) { EXPECT_THROW(lemma2_check(cd(0.0, 0.0), 1.0), ParameterError); }
