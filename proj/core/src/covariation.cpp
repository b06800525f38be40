#include "stable_spectra/covariation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "stable_spectra/errors.hpp"

namespace stable_spectra {
namespace {

constexpr std::size_t kBatches = 20;

std::complex<double> pairing(const DiscreteSpectralMeasure& m, const Atom& atom,
                             std::span<const std::complex<double>> a) {
  std::complex<double> s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * m.coordinate(atom, j);
  return s;
}

void require_dimension(const DiscreteSpectralMeasure& m, std::size_t n, const char* what) {
  if (n != m.dimension()) {
    std::ostringstream msg;
    msg << what << ": coefficient vector has length " << n << ", measure dimension is "
        << m.dimension();
    throw ValidationError(msg.str());
  }
}

struct Moments {
  std::complex<double> cross = 0.0;  // sum x y^<p-1>
  double abs_p = 0.0;                // sum |y|^p
};

std::complex<double> ratio_estimate(const Moments& m, std::size_t n, double alpha, double p,
                                    double s_p) {
  const double mean_abs = m.abs_p / static_cast<double>(n);
  if (!(mean_abs > 0.0) || !std::isfinite(mean_abs)) {
    throw NumericalError("covariation_estimate: degenerate denominator (y is zero)");
  }
  const std::complex<double> mean_cross = m.cross / static_cast<double>(n);
  return mean_cross / mean_abs * std::pow(mean_abs / s_p, alpha / p);
}

}  // namespace

std::complex<double> covariation_exact(const DiscreteSpectralMeasure& measure, Alpha alpha,
                                       std::span<const std::complex<double>> a,
                                       std::span<const std::complex<double>> b) {
  require_dimension(measure, a.size(), "covariation_exact");
  require_dimension(measure, b.size(), "covariation_exact");
  std::complex<double> s = 0.0;
  for (const auto& atom : measure.atoms()) {
    const auto pb = pairing(measure, atom, b);
    s += atom.weight * pairing(measure, atom, a) * signed_power(pb, alpha.value() - 1.0);
  }
  return s;
}

double covariation_norm(const DiscreteSpectralMeasure& measure, Alpha alpha,
                        std::span<const std::complex<double>> a) {
  const auto v = covariation_exact(measure, alpha, a, a);
  const double slack = 1e-12 * std::max(1.0, std::abs(v));
  if (v.real() < -slack || std::abs(v.imag()) > slack) {
    std::ostringstream msg;
    msg << "self-covariation is not a nonnegative real (" << v.real() << ", " << v.imag() << ")";
    throw IntegrityError(msg.str());
  }
  return std::pow(std::max(v.real(), 0.0), 1.0 / alpha.value());
}

double additivity_gap(const DiscreteSpectralMeasure& measure, Alpha alpha, std::size_t i0,
                      std::span<const std::complex<double>> theta) {
  const std::size_t d = measure.dimension();
  if (i0 >= d) throw ValidationError("additivity_gap: index out of range");
  require_dimension(measure, theta.size(), "additivity_gap");
  ComplexVector e(d, 0.0);
  e[i0] = 1.0;
  const auto joint = covariation_exact(measure, alpha, e, theta);
  std::complex<double> split = 0.0;
  ComplexVector single(d, 0.0);
  for (std::size_t j = 0; j < d; ++j) {
    if (theta[j] == 0.0) continue;
    single[j] = theta[j];
    split += covariation_exact(measure, alpha, e, single);
    single[j] = 0.0;
  }
  return std::abs(joint - split);
}

double default_moment_order(Alpha alpha) { return std::min(1.2, 0.5 * (1.0 + alpha.value())); }

CovariationEstimate covariation_estimate(std::span<const std::complex<double>> x,
                                         std::span<const std::complex<double>> y, Alpha alpha,
                                         double p, MomentLaw law) {
  const double a = alpha.value();
  if (!(p >= 1.0 && p < a)) {
    std::ostringstream msg;
    msg << "covariation_estimate: moment order p = " << p << " must lie in [1, alpha)";
    throw ParameterError(msg.str());
  }
  if (x.size() != y.size()) throw ValidationError("covariation_estimate: x and y differ in length");
  const std::size_t n = y.size();
  if (n < 1000) throw ParameterError("covariation_estimate: need at least 1000 paired samples");
  if (law == MomentLaw::real) {
    for (auto v : y) {
      if (v.imag() != 0.0) {
        throw ValidationError("covariation_estimate: real moment law needs real y samples");
      }
    }
  }
  const double s_p = law == MomentLaw::real ? s_alpha_real(alpha, p) : s_alpha_iso(alpha, p);

  const std::size_t per_batch = n / kBatches;
  std::vector<Moments> batch(kBatches);
  Moments all;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = std::abs(y[i]);
    std::complex<double> cross = 0.0;
    double abs_p = 0.0;
    if (r > 0.0) {
      abs_p = std::pow(r, p);
      cross = x[i] * std::conj(y[i]) * (abs_p / (r * r));  // x |y|^(p-2) conj(y)
    }
    all.cross += cross;
    all.abs_p += abs_p;
    const std::size_t b = i / per_batch;
    if (b < kBatches) {
      batch[b].cross += cross;
      batch[b].abs_p += abs_p;
    }
  }

  CovariationEstimate est;
  est.n = n;
  est.p = p;
  est.value = ratio_estimate(all, n, a, p, s_p);
  std::vector<std::complex<double>> values;
  values.reserve(kBatches);
  for (const auto& m : batch) {
    // A batch with all-zero y contributes no information; skip it.
    if (m.abs_p > 0.0) values.push_back(ratio_estimate(m, per_batch, a, p, s_p));
  }
  if (values.size() >= 2) {
    std::complex<double> mean = 0.0;
    for (auto v : values) mean += v;
    mean /= static_cast<double>(values.size());
    double ss = 0.0;
    for (auto v : values) ss += std::norm(v - mean);
    const double k = static_cast<double>(values.size());
    est.std_error = std::sqrt(ss / (k - 1.0) / k);
  }
  return est;
}

CovariationEstimate covariation_estimate(std::span<const double> x, std::span<const double> y,
                                         Alpha alpha, double p) {
  std::vector<std::complex<double>> cx(x.begin(), x.end());
  std::vector<std::complex<double>> cy(y.begin(), y.end());
  return covariation_estimate(cx, cy, alpha, p, MomentLaw::real);
}

}  // namespace stable_spectra
