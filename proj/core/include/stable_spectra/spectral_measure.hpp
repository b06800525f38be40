#pragma once

// Discrete spectral measures on the unit sphere of R^d (real mode) or C^d
// viewed as R^2d (complex mode), their Fourier transform, the third mixed
// derivatives that govern additivity of the covariation, and SaS sampling.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "stable_spectra/stable_core.hpp"

namespace stable_spectra {

enum class Mode { real, complex };

const char* to_string(Mode mode);

/// A point on the sphere stored by its real coordinates: d of them in real
/// mode, 2d interleaved as [re_1, im_1, ..., re_d, im_d] in complex mode.
struct Atom {
  std::vector<double> point;
  double weight = 0.0;
};

class DiscreteSpectralMeasure {
 public:
  /// Validates the atoms: positive finite weights, points of the right length
  /// with norm within 1e-9 of one (renormalised exactly). Atoms closer than
  /// 1e-12 are merged and their weights summed.
  DiscreteSpectralMeasure(Mode mode, std::size_t dimension, std::vector<Atom> atoms);

  static DiscreteSpectralMeasure empty(Mode mode, std::size_t dimension);

  Mode mode() const noexcept { return mode_; }
  std::size_t dimension() const noexcept { return dimension_; }
  /// Number of real coordinates per point (d or 2d).
  std::size_t real_dimension() const noexcept {
    return mode_ == Mode::real ? dimension_ : 2 * dimension_;
  }
  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  bool is_empty() const noexcept { return atoms_.empty(); }
  double total_mass() const noexcept;

  /// Complex coordinate j of an atom (imaginary part 0 in real mode).
  std::complex<double> coordinate(const Atom& atom, std::size_t j) const;

  /// True when every atom (s, w) has a partner (-s, w).
  bool is_symmetric(double tol = 1e-12) const;

 private:
  Mode mode_;
  std::size_t dimension_;
  std::vector<Atom> atoms_;
};

/// Atoms at +-e_i with weight a_i each (independent components).
DiscreteSpectralMeasure make_axes_measure(std::span<const double> weights,
                                          Mode mode = Mode::real);

/// (s, w) -> (s, w/2), (-s, w/2), then merge.
DiscreteSpectralMeasure symmetrize(const DiscreteSpectralMeasure& measure);

/// A point theta in the same real-coordinate layout as the atoms; complex
/// vectors are interleaved by `interleave`. With this layout the pairing
/// Re sum theta_i conj(s_i) is the ordinary dot product.
std::vector<double> interleave(std::span<const std::complex<double>> z);

/// Fourier transform of the measure: sum_atoms w cos(<theta, s>).
double phi(const DiscreteSpectralMeasure& measure, std::span<const double> theta);

/// d^3 phi / (dbar theta_i dbar theta_j dbar theta_k) = sum w s_i s_j s_k sin(<theta, s>),
/// with complex coordinate products in complex mode. Indices are 0-based.
std::complex<double> third_derivative(const DiscreteSpectralMeasure& measure, std::size_t i,
                                      std::size_t j, std::size_t k,
                                      std::span<const double> theta);

enum class TripleMode {
  literal,            // all (i, j, k) not all equal
  pairwise_distinct,  // i, j, k pairwise distinct
};

const char* to_string(TripleMode mode);

struct ThetaGridSpec {
  std::vector<double> values{0.0, 0.5, -0.5, 1.0, -1.0, 2.0, -2.0, 3.141592653589793,
                             -3.141592653589793};
  std::size_t max_points = 100000;  // full product beyond this is subsampled
  std::uint64_t seed = 0x5eed5eedULL;
  std::vector<std::vector<double>> extra_points;
  /// Local ascent of |d^3 phi| from this many best grid candidates (0 disables).
  int refine_candidates = 8;

  std::string describe(std::size_t real_dimension) const;
};

struct AdditivityReport {
  double max_abs = 0.0;
  struct Worst {
    std::size_t i = 0, j = 0, k = 0;
    std::vector<double> theta;
  } worst;
  std::string grid_spec;
  std::size_t points_evaluated = 0;
  double tolerance = 0.0;
  TripleMode mode = TripleMode::literal;
  bool pass = true;
};

/// Max of |d^3 phi| over the grid and the triples selected by `mode`.
AdditivityReport check_additivity_condition(const DiscreteSpectralMeasure& measure,
                                            const ThetaGridSpec& grid = {},
                                            double tolerance = 1e-10,
                                            TripleMode mode = TripleMode::literal);

/// n draws stored row-major, each row in the atoms' real-coordinate layout.
struct VectorSample {
  Mode mode = Mode::real;
  std::size_t dimension = 0;
  std::size_t n = 0;
  std::vector<double> data;

  std::size_t stride() const { return mode == Mode::real ? dimension : 2 * dimension; }
  std::span<const double> row(std::size_t r) const {
    return std::span<const double>(data).subspan(r * stride(), stride());
  }
  std::complex<double> at(std::size_t r, std::size_t j) const;
  /// Coordinate j of every draw.
  std::vector<std::complex<double>> column(std::size_t j) const;
};

/// X = sum over +-pairs of (2w)^(1/alpha) s Z with i.i.d. standard SaS Z.
/// Throws ValidationError for an asymmetric measure.
VectorSample sample_vector(const DiscreteSpectralMeasure& measure, Alpha alpha, std::size_t n,
                           std::uint64_t seed);

/// exp(-sum_atoms w |<theta, s>|^alpha).
double model_char_function(const DiscreteSpectralMeasure& measure, Alpha alpha,
                           std::span<const double> theta);

/// mean of exp(i <theta, X>) over the draws.
std::complex<double> empirical_char_function(const VectorSample& sample,
                                             std::span<const double> theta);

}  // namespace stable_spectra
