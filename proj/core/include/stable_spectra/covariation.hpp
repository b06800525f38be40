#pragma once

// Covariation of linear forms of an SaS vector from its spectral measure, the
// covariation norm, the additivity-gap diagnostic, and a fractional-moment
// Monte-Carlo estimator.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "stable_spectra/spectral_measure.hpp"
#include "stable_spectra/stable_core.hpp"

namespace stable_spectra {

using ComplexVector = std::vector<std::complex<double>>;

/// [sum a_j X_j, sum b_j X_j]_alpha = sum_atoms w <a,s> <b,s>^<alpha-1>,
/// with <a,s> = sum a_j s_j and s_j the complex coordinates of the atom.
std::complex<double> covariation_exact(const DiscreteSpectralMeasure& measure, Alpha alpha,
                                       std::span<const std::complex<double>> a,
                                       std::span<const std::complex<double>> b);

/// ([a.X, a.X]_alpha)^(1/alpha). Throws IntegrityError on a negative or
/// non-real self-covariation.
double covariation_norm(const DiscreteSpectralMeasure& measure, Alpha alpha,
                        std::span<const std::complex<double>> a);

/// |[X_i0, sum theta_j X_j] - sum_j [X_i0, theta_j X_j]|, i0 0-based.
double additivity_gap(const DiscreteSpectralMeasure& measure, Alpha alpha, std::size_t i0,
                      std::span<const std::complex<double>> theta);

/// Which fractional-moment law links E|Y|^p to ||Y||_alpha^p.
enum class MomentLaw { real, isotropic };

struct CovariationEstimate {
  std::complex<double> value;
  double std_error = 0.0;
  std::size_t n = 0;
  double p = 0.0;
};

/// min(1.2, (1 + alpha) / 2).
double default_moment_order(Alpha alpha);

/// [X, Y]_alpha estimated as
///   mean(x y^<p-1>) / mean|y|^p * (mean|y|^p / S_alpha(p))^(alpha/p),
/// with the standard error taken from 20 non-overlapping batch estimates.
/// Requires 1 <= p < alpha and n >= 1000. MomentLaw::real requires real y.
CovariationEstimate covariation_estimate(std::span<const std::complex<double>> x,
                                         std::span<const std::complex<double>> y, Alpha alpha,
                                         double p, MomentLaw law);

CovariationEstimate covariation_estimate(std::span<const double> x, std::span<const double> y,
                                         Alpha alpha, double p);

}  // namespace stable_spectra
