#include "stable_spectra/stable_core.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "parallel.hpp"
#include "stable_spectra/errors.hpp"
#include "stable_spectra/quadrature.hpp"

namespace stable_spectra {
namespace {

constexpr double kPi = std::numbers::pi;

void require_moment_order(double p, double upper, const char* what) {
  if (!(p > 0.0 && p < upper)) {
    std::ostringstream msg;
    msg << what << ": order p = " << p << " must lie in (0, " << upper << ")";
    throw ParameterError(msg.str());
  }
}

void require_scale(double scale) {
  if (!(scale >= 0.0) || !std::isfinite(scale)) {
    throw ParameterError("scale must be finite and >= 0");
  }
}

}  // namespace

Alpha::Alpha(double value) : value_(value) {
  if (!(value > 1.0 && value < 2.0)) {
    std::ostringstream msg;
    msg << "alpha = " << value << " outside (1, 2)";
    throw ParameterError(msg.str());
  }
}

double signed_power(double s, double beta) {
  if (!(beta > 0.0)) throw ParameterError("signed_power: beta must be > 0");
  if (s == 0.0) return 0.0;
  return std::copysign(std::pow(std::abs(s), beta), s);
}

std::complex<double> signed_power(std::complex<double> z, double beta) {
  if (!(beta > 0.0)) throw ParameterError("signed_power: beta must be > 0");
  const double r = std::abs(z);
  if (r == 0.0) return {0.0, 0.0};
  return std::pow(r, beta - 1.0) * std::conj(z);
}

double gamma_cos(double p) {
  require_moment_order(p, 2.0, "gamma_cos");
  return kPi / (2.0 * std::tgamma(p) * std::sin(0.5 * p * kPi));
}

double psi_alpha(Alpha alpha) { return std::tgamma(1.0 - 1.0 / alpha.value()); }

double s_alpha_real(Alpha alpha, double p) {
  const double a = alpha.value();
  require_moment_order(p, a, "s_alpha_real");
  return std::pow(2.0, p) * std::tgamma(0.5 * (1.0 + p)) * std::tgamma(1.0 - p / a) /
         (std::tgamma(1.0 - 0.5 * p) * std::tgamma(0.5));
}

double s_alpha_iso(Alpha alpha, double p) {
  const double a = alpha.value();
  require_moment_order(p, a, "s_alpha_iso");
  return std::tgamma(0.5 * (2.0 + p)) * std::tgamma(1.0 - p / a) / std::tgamma(1.0 - 0.5 * p);
}

double isotropic_c0(Alpha alpha) {
  const double a = alpha.value();
  return std::tgamma(0.5 * (a + 1.0)) / (std::sqrt(kPi) * std::tgamma(0.5 * a + 1.0));
}

double planar_constant(double p) {
  require_moment_order(p, 2.0, "planar_constant");
  // 1 + sin(2t) vanishes at 3pi/4 and 7pi/4; integrate over one period split there.
  auto integrand = [p](double t) { return std::pow(std::abs(1.0 + std::sin(2.0 * t)), 0.5 * p); };
  quad::GradedOptions opt;
  opt.grade_left = opt.grade_right = true;
  opt.levels = 40;
  const double z1 = 0.75 * kPi;
  const double angular = quad::integrate_graded(integrand, z1 - kPi, z1, opt) +
                         quad::integrate_graded(integrand, z1, z1 + kPi, opt);
  return std::pow(2.0, -0.5 * p) * gamma_cos(p) / p * angular;
}

StableConstants constants(Alpha alpha, double p) {
  const double a = alpha.value();
  require_moment_order(p, a, "constants");
  StableConstants c;
  c.alpha = a;
  c.p = p;
  c.psi_alpha = psi_alpha(alpha);
  c.s_alpha_real = s_alpha_real(alpha, p);
  c.s_alpha_iso = s_alpha_iso(alpha, p);
  c.rho_small = 1.0 / gamma_cos(p);
  c.c = planar_constant(p);
  c.rho_p = p * c.c;
  c.c0 = isotropic_c0(alpha);
  return c;
}

// ---------------------------------------------------------------------------
// Sampling

double draw_standard_sas(Rng& rng, double alpha) {
  const double v = rng.uniform(-0.5 * kPi, 0.5 * kPi);
  const double w = rng.exponential();
  const double cv = std::cos(v);
  return std::sin(alpha * v) / std::pow(cv, 1.0 / alpha) *
         std::pow(std::cos((1.0 - alpha) * v) / w, (1.0 - alpha) / alpha);
}

double draw_positive_stable(Rng& rng, double beta) {
  const double u = rng.uniform(0.0, kPi);
  const double w = rng.exponential();
  const double a = std::pow(std::sin(beta * u), beta / (1.0 - beta)) * std::sin((1.0 - beta) * u) /
                   std::pow(std::sin(u), 1.0 / (1.0 - beta));
  return std::pow(a / w, (1.0 - beta) / beta);
}

SampleBatch<double> sample_sas_real(Alpha alpha, double scale, std::size_t n, std::uint64_t seed) {
  require_scale(scale);
  if (n == 0) throw ParameterError("sample_sas_real: n must be >= 1");
  SampleBatch<double> batch{std::vector<double>(n, 0.0), seed, alpha.value(), scale};
  if (scale == 0.0) return batch;
  const std::size_t blocks = (n + detail::kSampleBlock - 1) / detail::kSampleBlock;
  detail::for_each_block(blocks, [&](std::size_t b) {
    Rng rng(derive_seed(seed, b));
    const std::size_t lo = b * detail::kSampleBlock;
    const std::size_t hi = std::min(n, lo + detail::kSampleBlock);
    for (std::size_t i = lo; i < hi; ++i) {
      batch.values[i] = scale * draw_standard_sas(rng, alpha.value());
    }
  });
  return batch;
}

SampleBatch<std::complex<double>> sample_isotropic_complex(Alpha alpha, double scale,
                                                           std::size_t n, std::uint64_t seed) {
  require_scale(scale);
  if (n == 0) throw ParameterError("sample_isotropic_complex: n must be >= 1");
  SampleBatch<std::complex<double>> batch{std::vector<std::complex<double>>(n), seed,
                                          alpha.value(), scale};
  if (scale == 0.0) return batch;
  // CF exp(-(sigma^2 |theta|^2 / 2)^(alpha/2)) for components N(0, sigma^2);
  // sigma = scale / sqrt(2) gives the (scale / 2)^alpha calibration.
  const double sigma = scale / std::numbers::sqrt2;
  const double beta = 0.5 * alpha.value();
  const std::size_t blocks = (n + detail::kSampleBlock - 1) / detail::kSampleBlock;
  detail::for_each_block(blocks, [&](std::size_t b) {
    Rng rng(derive_seed(seed, b));
    const std::size_t lo = b * detail::kSampleBlock;
    const std::size_t hi = std::min(n, lo + detail::kSampleBlock);
    for (std::size_t i = lo; i < hi; ++i) {
      const double root_a = std::sqrt(draw_positive_stable(rng, beta));
      const double g1 = rng.normal();
      const double g2 = rng.normal();
      batch.values[i] = root_a * sigma * std::complex<double>(g1, g2);
    }
  });
  return batch;
}

// ---------------------------------------------------------------------------
// Fractional integrals

double sine_power_integral(double s, double p) {
  require_moment_order(p, 2.0, "sine_power_integral");
  if (s == 0.0) return 0.0;
  const double a = std::abs(s);
  const double half = kPi / a;
  auto f = [a, p](double t) { return std::sin(a * t) / std::pow(t, p); };

  quad::GradedOptions opt;
  opt.grade_left = true;
  opt.left_leading = quad::LeadingTerm{a, 1.0 - p};  // sin(at)/t^p ~ a t^(1-p)
  const double head = quad::integrate_graded(f, 0.0, half, opt);
  const double tail = quad::integrate_oscillatory_tail(f, half, half).value;
  return std::copysign(head + tail, s);
}

double one_minus_cos_power_integral(double s, double p) {
  require_moment_order(p, 2.0, "one_minus_cos_power_integral");
  if (s == 0.0) return 0.0;
  const double a = std::abs(s);
  const double first_zero = 0.5 * kPi / a;  // first zero of cos(at)
  auto head_f = [a, p](double t) {
    const double h = std::sin(0.5 * a * t);
    return 2.0 * h * h / std::pow(t, p + 1.0);
  };
  quad::GradedOptions opt;
  opt.grade_left = true;
  opt.left_leading = quad::LeadingTerm{0.5 * a * a, 1.0 - p};
  const double head = quad::integrate_graded(head_f, 0.0, first_zero, opt);
  // Beyond the first zero: int t^-(p+1) in closed form minus the accelerated cosine tail.
  const double algebraic = std::pow(first_zero, -p) / p;
  auto cos_f = [a, p](double t) { return std::cos(a * t) / std::pow(t, p + 1.0); };
  const double oscillatory = quad::integrate_oscillatory_tail(cos_f, first_zero, kPi / a).value;
  return head + algebraic - oscillatory;
}

Lemma1Check lemma1_check(double s, double p) {
  if (!(p > 1.0 && p < 2.0)) throw ParameterError("lemma1_check: p must lie in (1, 2)");
  Lemma1Check out;
  out.s = s;
  out.p = p;
  const double gc = gamma_cos(p);
  out.sine.numeric = sine_power_integral(s, p);
  out.sine.closed_form = signed_power(s, p - 1.0) * gc;  // s^<p-1> / rho_small(p)
  out.sine.abs_err = std::abs(out.sine.numeric - out.sine.closed_form);
  out.cosine.numeric = one_minus_cos_power_integral(s, p);
  out.cosine.closed_form = std::pow(std::abs(s), p) * gc / p;
  out.cosine.abs_err = std::abs(out.cosine.numeric - out.cosine.closed_form);
  return out;
}

Lemma2Check lemma2_check(std::complex<double> z, double p) {
  require_moment_order(p, 2.0, "lemma2_check");
  const double r = std::abs(z);
  if (r == 0.0) throw ParameterError("lemma2_check: z must be nonzero");
  const double psi = std::arg(z);
  // With x = rho e^{i phi}: Re(x conj z) = rho r cos(phi - psi). Parametrise
  // each half-turn by its offset u from the zero phi0 = psi + pi/2 so the
  // projection r cos(phi - psi) = -r sin(u) is exact near the zeros.
  const double phi0 = psi + 0.5 * kPi;

  quad::GradedOptions opt;
  opt.grade_left = opt.grade_right = true;
  opt.levels = 40;

  auto modulus_f = [&](double u) { return one_minus_cos_power_integral(-r * std::sin(u), p); };
  const double modulus = 2.0 * quad::integrate_graded(modulus_f, 0.0, kPi, opt);
  // The second half-turn mirrors the first (projection changes sign, the
  // integrand is even in it), hence the factor 2 above; the sine integrand is
  // odd in the projection and picks up e^{-i pi} = -1, so it doubles as well.
  auto signed_f = [&](double u) {
    const double radial = sine_power_integral(-r * std::sin(u), p);
    return std::polar(radial, -(phi0 + u));
  };
  const std::complex<double> signed_int = 2.0 * quad::integrate_graded(signed_f, 0.0, kPi, opt);

  const double c = planar_constant(p);
  Lemma2Check out;
  out.z = z;
  out.p = p;
  out.modulus.numeric = modulus;
  out.modulus.closed_form = c * std::pow(r, p);
  out.modulus.abs_err = std::abs(out.modulus.numeric - out.modulus.closed_form);
  out.signed_power.numeric = signed_int;
  // z^<p-1> = |z|^(p-2) conj(z); written out since p - 1 may be negative here.
  out.signed_power.closed_form = p * c * std::pow(r, p - 2.0) * std::conj(z);
  out.signed_power.abs_err = std::abs(out.signed_power.numeric - out.signed_power.closed_form);
  return out;
}

}  // namespace stable_spectra
