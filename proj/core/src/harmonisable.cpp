#include "stable_spectra/harmonisable.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "stable_spectra/errors.hpp"
#include "stable_spectra/quadrature.hpp"

namespace stable_spectra {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kLineTol = 1e-9;

bool same_line(double a, double b) {
  return std::abs(a - b) <= kLineTol * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

double sinc(double x) { return std::abs(x) < 1e-8 ? 1.0 - x * x / 6.0 : std::sin(x) / x; }

}  // namespace

HarmonisableModel::HarmonisableModel(Alpha alpha, std::vector<double> frequencies, ComplexMatrix F)
    : HarmonisableModel(alpha, std::move(frequencies), std::move(F), std::nullopt) {}

HarmonisableModel::HarmonisableModel(const IncrementLaw& law)
    : HarmonisableModel(law.alpha(), law.frequencies(), bimeasure_from_increments(law).F, law) {}

HarmonisableModel::HarmonisableModel(Alpha alpha, std::vector<double> frequencies, ComplexMatrix F,
                                     std::optional<IncrementLaw> increments)
    : alpha_(alpha),
      frequencies_(std::move(frequencies)),
      F_(std::move(F)),
      increments_(std::move(increments)) {
  if (F_.size() != frequencies_.size()) {
    std::ostringstream msg;
    msg << "model: bimeasure is " << F_.size() << "x" << F_.size() << " but there are "
        << frequencies_.size() << " frequencies";
    throw ValidationError(msg.str());
  }
  for (double l : frequencies_) {
    if (!std::isfinite(l)) throw ValidationError("model: non-finite frequency");
  }
  if (increments_) {
    if (increments_->frequencies() != frequencies_) {
      throw ValidationError("model: increment law frequencies differ from the model's");
    }
    if (std::abs(increments_->alpha().value() - alpha_.value()) > 0.0) {
      throw ValidationError("model: increment law alpha differs from the model's");
    }
  }
}

std::complex<double> covariation_function(const HarmonisableModel& model, double s, double t) {
  const auto& l = model.frequencies();
  const std::size_t n = l.size();
  std::complex<double> out = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const auto ej = std::polar(1.0, s * l[j]);
    for (std::size_t k = 0; k < n; ++k) {
      if (model.F()(j, k) == 0.0) continue;
      out += ej * std::polar(1.0, -t * l[k]) * model.F()(j, k);
    }
  }
  return out;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::stationary:
      return "stationary";
    case Verdict::periodic:
      return "periodic";
    case Verdict::almost_periodic:
      return "almost_periodic";
  }
  return "unknown";
}

bool on_lattice(double gamma, double T) {
  const double x = gamma * T / kTwoPi;
  return std::abs(x - std::round(x)) <= kLineTol * std::max(1.0, std::abs(gamma));
}

ClassificationReport classify(const HarmonisableModel& model, double mass_tolerance) {
  if (!(mass_tolerance >= 0.0)) throw ParameterError("classify: mass_tolerance must be >= 0");
  const auto& l = model.frequencies();
  const std::size_t n = l.size();
  std::vector<SpectralLine> raw;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      const double m = std::abs(model.F()(j, k));
      if (m > mass_tolerance) raw.push_back({l[j] - l[k], m});
    }
  }
  std::sort(raw.begin(), raw.end(),
            [](const SpectralLine& a, const SpectralLine& b) { return a.gamma < b.gamma; });
  ClassificationReport report;
  report.mass_tolerance = mass_tolerance;
  for (const auto& line : raw) {
    if (!report.lines.empty() && same_line(report.lines.back().gamma, line.gamma)) {
      report.lines.back().mass += line.mass;
    } else {
      report.lines.push_back(line);
    }
  }
  for (auto& line : report.lines) {
    if (std::abs(line.gamma) <= kLineTol) line.gamma = 0.0;
  }

  double gamma_min = 0.0;
  for (const auto& line : report.lines) {
    const double g = std::abs(line.gamma);
    if (g > 0.0 && (gamma_min == 0.0 || g < gamma_min)) gamma_min = g;
  }
  if (gamma_min == 0.0) {
    report.verdict = Verdict::stationary;
    return report;
  }
  // Largest gap g = gamma_min / m with every line on g Z.
  for (int m = 1; m <= 64; ++m) {
    const double g = gamma_min / m;
    const bool fits = std::all_of(report.lines.begin(), report.lines.end(), [&](const SpectralLine& line) {
      const double x = std::abs(line.gamma) / g;
      return std::abs(x - std::round(x)) * g <= kLineTol * std::max(1.0, std::abs(line.gamma));
    });
    if (fits) {
      report.verdict = Verdict::periodic;
      report.period = kTwoPi / g;
      return report;
    }
  }
  report.verdict = Verdict::almost_periodic;
  return report;
}

CoefficientPair fourier_coefficient(const HarmonisableModel& model, double tau, int k, double T) {
  if (!(T > 0.0) || !std::isfinite(T)) throw ParameterError("fourier_coefficient: T must be > 0");
  const auto& l = model.frequencies();
  const std::size_t n = l.size();
  const double omega = kTwoPi * k / T;

  // Enough panels to resolve the fastest oscillation of the integrand.
  double fastest = std::abs(omega);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t q = 0; q < n; ++q) fastest = std::max(fastest, std::abs(l[j] - l[q]) + std::abs(omega));
  }
  const int panels = std::max(8, static_cast<int>(std::ceil(2.0 * fastest * T / kTwoPi)) + 8);
  auto integrand = [&](double t) {
    return covariation_function(model, t + tau, t) * std::polar(1.0, -omega * t);
  };
  CoefficientPair out;
  out.numeric = quad::integrate_composite(integrand, 0.0, T, panels, 20) / T;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t q = 0; q < n; ++q) {
      if (same_line(l[j] - l[q], omega)) out.predicted += std::polar(1.0, tau * l[j]) * model.F()(j, q);
    }
  }
  return out;
}

std::complex<double> bohr_coefficient(const HarmonisableModel& model, double tau, double gamma,
                                      double M) {
  if (!(M > 0.0)) throw ParameterError("bohr_coefficient: M must be > 0");
  const auto& l = model.frequencies();
  const std::size_t n = l.size();
  std::complex<double> out = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t q = 0; q < n; ++q) {
      const double delta = l[j] - l[q] - gamma;
      out += std::polar(1.0, tau * l[j]) * model.F()(j, q) * sinc(delta * M);
    }
  }
  return out;
}

std::complex<double> bohr_limit(const HarmonisableModel& model, double tau, double gamma) {
  const auto& l = model.frequencies();
  std::complex<double> out = 0.0;
  for (std::size_t j = 0; j < l.size(); ++j) {
    for (std::size_t q = 0; q < l.size(); ++q) {
      if (same_line(l[j] - l[q], gamma)) out += std::polar(1.0, tau * l[j]) * model.F()(j, q);
    }
  }
  return out;
}

FejerResult fejer_average(const HarmonisableModel& model, double t, double tau, int N, double T) {
  if (N < 0) throw ParameterError("fejer_average: N must be >= 0");
  if (!(T > 0.0)) throw ParameterError("fejer_average: T must be > 0");
  FejerResult out;
  for (int k = -N; k <= N; ++k) out.value += covariation_function(model, t + tau + k * T, t + k * T);
  out.value /= static_cast<double>(2 * N + 1);
  const auto& l = model.frequencies();
  for (std::size_t j = 0; j < l.size(); ++j) {
    for (std::size_t q = 0; q < l.size(); ++q) {
      if (!on_lattice(l[j] - l[q], T)) continue;
      out.masked_limit += std::polar(1.0, (t + tau) * l[j] - t * l[q]) * model.F()(j, q);
    }
  }
  return out;
}

std::vector<std::complex<double>> PathMatrix::at_time(std::size_t time_index) const {
  if (time_index >= times.size()) throw ValidationError("PathMatrix::at_time: index out of range");
  std::vector<std::complex<double>> out(n_paths);
  for (std::size_t p = 0; p < n_paths; ++p) out[p] = at(p, time_index);
  return out;
}

PathMatrix synthesize_paths(const HarmonisableModel& model, std::span<const double> times,
                            std::size_t n_paths, std::uint64_t seed) {
  if (!model.increments()) {
    throw CapabilityError("synthesize_paths: model has no increment law");
  }
  PathMatrix out;
  out.times.assign(times.begin(), times.end());
  out.n_paths = n_paths;
  out.values.assign(n_paths * times.size(), 0.0);
  if (n_paths == 0) return out;
  const auto& law = *model.increments();
  const auto draws = sample_vector(law.joint_measure(), law.alpha(), n_paths, seed);
  const auto& l = model.frequencies();
  std::vector<std::complex<double>> phase(times.size() * l.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    for (std::size_t j = 0; j < l.size(); ++j) phase[i * l.size() + j] = std::polar(1.0, times[i] * l[j]);
  }
  for (std::size_t p = 0; p < n_paths; ++p) {
    for (std::size_t i = 0; i < times.size(); ++i) {
      std::complex<double> x = 0.0;
      for (std::size_t j = 0; j < l.size(); ++j) x += phase[i * l.size() + j] * draws.at(p, j);
      out.values[p * times.size() + i] = x;
    }
  }
  return out;
}

}  // namespace stable_spectra
