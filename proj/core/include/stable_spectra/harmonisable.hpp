#pragma once

// Harmonisable SaS models X_t = sum_j e^{i t lambda_j} dxi_j on finitely many
// frequencies: the covariation function, stationary / periodic / almost
// periodic classification from the support of F, cyclic coefficients, Fejer
// averages, and path synthesis.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stable_spectra/bimeasure.hpp"

namespace stable_spectra {

class HarmonisableModel {
 public:
  /// Analytics-only model. F must be n x n for n frequencies.
  HarmonisableModel(Alpha alpha, std::vector<double> frequencies, ComplexMatrix F);

  /// Model carrying its increment law; F is computed from the law.
  explicit HarmonisableModel(const IncrementLaw& law);

  /// Model with both an explicit F and an increment law on the same frequencies.
  HarmonisableModel(Alpha alpha, std::vector<double> frequencies, ComplexMatrix F,
                    std::optional<IncrementLaw> increments);

  Alpha alpha() const noexcept { return alpha_; }
  const std::vector<double>& frequencies() const noexcept { return frequencies_; }
  const ComplexMatrix& F() const noexcept { return F_; }
  const std::optional<IncrementLaw>& increments() const noexcept { return increments_; }
  std::size_t size() const noexcept { return frequencies_.size(); }

 private:
  Alpha alpha_;
  std::vector<double> frequencies_;
  ComplexMatrix F_;
  std::optional<IncrementLaw> increments_;
};

/// C(s, t) = sum_jk e^{i(s lambda_j - t lambda_k)} F_jk.
std::complex<double> covariation_function(const HarmonisableModel& model, double s, double t);

enum class Verdict { stationary, periodic, almost_periodic };

const char* to_string(Verdict v);

struct SpectralLine {
  double gamma = 0.0;  // lambda_j - lambda_k
  double mass = 0.0;   // sum of |F_jk| on the line
};

struct ClassificationReport {
  Verdict verdict = Verdict::stationary;
  std::optional<double> period;  // fundamental period when periodic
  std::vector<SpectralLine> lines;
  double mass_tolerance = 0.0;
};

/// Lines gamma = lambda_j - lambda_k with |F_jk| > mass_tolerance, merged
/// within 1e-9. Periodic when all gammas lie within 1e-9 max(1, |gamma|) of a
/// common lattice g Z, g searched among gamma_min / m for m <= 64 (largest
/// consistent g, T = 2 pi / g).
ClassificationReport classify(const HarmonisableModel& model, double mass_tolerance = 1e-12);

/// True when gamma T / (2 pi) is within 1e-9 max(1, |gamma|) of an integer.
bool on_lattice(double gamma, double T);

struct CoefficientPair {
  std::complex<double> numeric;
  std::complex<double> predicted;
};

/// k-th cyclic coefficient of C_tau(t) = C(t + tau, t) over one period T.
/// numeric: (1/T) int_0^T C_tau(t) e^{-2 pi i k t / T} dt by composite
/// Gauss-Legendre quadrature; predicted: sum over lambda_j - lambda_l = 2 pi k / T
/// of e^{i tau lambda_j} F_jl. The two agree when the model is T-periodic.
CoefficientPair fourier_coefficient(const HarmonisableModel& model, double tau, int k, double T);

/// (1 / (2M)) int_{-M}^{M} C(t + tau, t) e^{-i gamma t} dt, term by term.
std::complex<double> bohr_coefficient(const HarmonisableModel& model, double tau, double gamma,
                                      double M);

/// Line sum sum_{lambda_j - lambda_l = gamma} e^{i tau lambda_j} F_jl (the M -> inf limit).
std::complex<double> bohr_limit(const HarmonisableModel& model, double tau, double gamma);

struct FejerResult {
  std::complex<double> value;
  std::complex<double> masked_limit;
};

/// value = (1 / (2N + 1)) sum_{k=-N}^{N} C(t + tau + kT, t + kT);
/// masked_limit keeps the F_jk with lambda_j - lambda_k on the 2 pi / T lattice.
FejerResult fejer_average(const HarmonisableModel& model, double t, double tau, int N, double T);

/// Paths stored row-major: n_paths rows of |times| values.
struct PathMatrix {
  std::vector<double> times;
  std::size_t n_paths = 0;
  std::vector<std::complex<double>> values;

  std::complex<double> at(std::size_t path, std::size_t time_index) const {
    return values[path * times.size() + time_index];
  }
  std::vector<std::complex<double>> at_time(std::size_t time_index) const;
};

/// X_t = sum_j e^{i t lambda_j} dxi_j with (dxi_j) drawn from the increment
/// law, one draw per path. Throws CapabilityError without an increment law.
PathMatrix synthesize_paths(const HarmonisableModel& model, std::span<const double> times,
                            std::size_t n_paths, std::uint64_t seed);

}  // namespace stable_spectra
