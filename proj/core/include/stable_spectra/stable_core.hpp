#pragma once

// Scalar machinery for symmetric alpha-stable laws: the stability index, the
// signed power, alpha-dependent constants, standard samplers, and numerical
// checks of the fractional-integral identities behind the additivity result.

#include <complex>
#include <cstdint>
#include <vector>

#include "stable_spectra/rng.hpp"

namespace stable_spectra {

/// Stability index, restricted to the open interval (1, 2).
class Alpha {
 public:
  explicit Alpha(double value);
  double value() const noexcept { return value_; }

 private:
  double value_;
};

/// sign(s) |s|^beta. Throws ParameterError if beta <= 0.
double signed_power(double s, double beta);

/// |z|^(beta - 1) conj(z), with 0 mapped to 0. Throws ParameterError if beta <= 0.
std::complex<double> signed_power(std::complex<double> z, double beta);

/// Gamma(1 - p) cos(p pi / 2) for 0 < p < 2, evaluated through the reflection
/// formula pi / (2 Gamma(p) sin(p pi / 2)) so that p = 1 gives pi / 2.
double gamma_cos(double p);

struct StableConstants {
  double alpha = 0.0;
  double p = 0.0;
  double psi_alpha = 0.0;     // Gamma(1 - 1/alpha)
  double s_alpha_real = 0.0;  // E|X|^p / ||X||^p for real SaS X
  double s_alpha_iso = 0.0;   // E|Z|^p / scale^p for isotropic complex Z
  double rho_small = 0.0;     // 1 / (Gamma(1 - p) cos(p pi / 2))
  double c = 0.0;             // c(p) of the planar 1 - cos identity (quadrature)
  double rho_p = 0.0;         // p c(p)
  double c0 = 0.0;            // (1 / 2pi) int_0^2pi |cos phi|^alpha dphi
};

/// All constants for (alpha, p). Requires 0 < p < alpha.
StableConstants constants(Alpha alpha, double p);

double psi_alpha(Alpha alpha);
double s_alpha_real(Alpha alpha, double p);
double s_alpha_iso(Alpha alpha, double p);
double isotropic_c0(Alpha alpha);

/// c(p) = 2^(-p/2) Gamma(1-p) cos(p pi/2) / p * int_0^2pi |1 + sin 2t|^(p/2) dt,
/// the angular integral evaluated by graded Gauss-Legendre quadrature.
double planar_constant(double p);

template <class T>
struct SampleBatch {
  std::vector<T> values;
  std::uint64_t seed = 0;
  double alpha = 0.0;
  double scale = 0.0;
};

/// One standard SaS draw, characteristic function exp(-|theta|^alpha)
/// (Chambers-Mallows-Stuck, symmetric case).
double draw_standard_sas(Rng& rng, double alpha);

/// One draw of the positive beta-stable law with Laplace transform
/// exp(-lambda^beta), 0 < beta < 1 (Kanter's representation).
double draw_positive_stable(Rng& rng, double beta);

/// n i.i.d. real SaS draws with characteristic function exp(-scale^alpha |theta|^alpha).
/// Deterministic in (alpha, scale, n, seed).
SampleBatch<double> sample_sas_real(Alpha alpha, double scale, std::size_t n,
                                    std::uint64_t seed);

/// n i.i.d. isotropic complex SaS draws built as sqrt(A) (G1 + i G2) with A a
/// positive alpha/2-stable subordinator. Calibrated so that
/// E|Z|^p = s_alpha_iso(alpha, p) * scale^p for every p < alpha, which gives
/// E exp(i Re(conj(theta) Z)) = exp(-(scale / 2)^alpha |theta|^alpha).
SampleBatch<std::complex<double>> sample_isotropic_complex(Alpha alpha, double scale,
                                                           std::size_t n,
                                                           std::uint64_t seed);

template <class T>
struct IdentityCheck {
  T numeric{};
  T closed_form{};
  double abs_err = 0.0;
};

struct Lemma1Check {
  double s = 0.0;
  double p = 0.0;
  IdentityCheck<double> sine;    // int_0^inf sin(st) / t^p dt  vs  s^<p-1> / rho_small(p)
  IdentityCheck<double> cosine;  // int_0^inf (1 - cos st) / t^(p+1) dt  vs  |s|^p Gamma(1-p) cos(p pi/2) / p
};

struct Lemma2Check {
  std::complex<double> z;
  double p = 0.0;
  IdentityCheck<double> modulus;                     // planar 1 - cos integral vs c(p) |z|^p
  IdentityCheck<std::complex<double>> signed_power;  // planar sine integral vs p c(p) z^<p-1>
};

/// Numerical check of the real sine identity, 1 < p < 2. The sine integral is
/// summed over half-periods of sin(st) with epsilon acceleration; the first
/// half-period uses panels graded towards t = 0.
Lemma1Check lemma1_check(double s, double p);

/// Numerical check of the planar identities, 0 < p < 2, z != 0. Polar
/// quadrature: graded angular panels between the zeros of Re(x conj z), each
/// radial integral truncated at a half-period boundary with the algebraic tail
/// added in closed form and the oscillatory remainder accelerated.
Lemma2Check lemma2_check(std::complex<double> z, double p);

/// int_0^inf sin(s t) t^-p dt by quadrature, 0 < p < 2.
double sine_power_integral(double s, double p);

/// int_0^inf (1 - cos(s t)) t^-(p+1) dt by quadrature, 0 < p < 2.
double one_minus_cos_power_integral(double s, double p);

}  // namespace stable_spectra
