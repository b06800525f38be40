#pragma once

// Covariation bimeasure of an atomic increment law: F_jk = [dxi_j, dxi_k]_alpha
// over frequency cells, its variations, the control measure nu, and
// Morse-Transue integrals of step functions.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "stable_spectra/covariation.hpp"
#include "stable_spectra/spectral_measure.hpp"
#include "stable_spectra/stable_core.hpp"

namespace stable_spectra {

/// Dense square complex matrix, row-major.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

  std::size_t size() const noexcept { return n_; }
  std::complex<double>& operator()(std::size_t j, std::size_t k) { return data_[j * n_ + k]; }
  const std::complex<double>& operator()(std::size_t j, std::size_t k) const {
    return data_[j * n_ + k];
  }

 private:
  std::size_t n_ = 0;
  std::vector<std::complex<double>> data_;
};

/// Frequencies lambda_1 < ... < lambda_n and the joint spectral measure of
/// (dxi_1, ..., dxi_n).
class IncrementLaw {
 public:
  IncrementLaw(std::vector<double> frequencies, DiscreteSpectralMeasure joint_measure,
               Alpha alpha);

  const std::vector<double>& frequencies() const noexcept { return frequencies_; }
  const DiscreteSpectralMeasure& joint_measure() const noexcept { return joint_; }
  Alpha alpha() const noexcept { return alpha_; }
  std::size_t size() const noexcept { return frequencies_.size(); }

 private:
  std::vector<double> frequencies_;
  DiscreteSpectralMeasure joint_;
  Alpha alpha_;
};

struct DiscreteBimeasure {
  std::vector<double> frequencies;
  ComplexMatrix F;
  /// Condition-A check of the generating law, when F came from one.
  std::optional<AdditivityReport> condition_a;

  std::size_t size() const noexcept { return frequencies.size(); }
  /// False only when a generating law is known to fail condition A.
  bool additive() const noexcept { return !condition_a || condition_a->pass; }
};

using CellSet = std::vector<std::size_t>;

/// F_jk = covariation_exact(joint, e_j, e_k), with the law's condition-A report.
DiscreteBimeasure bimeasure_from_increments(const IncrementLaw& law,
                                            const ThetaGridSpec& grid = {});

/// sum_ij z_i z_j^<alpha-1> F_ij.
std::complex<double> bilinear_form(const ComplexMatrix& F, std::span<const std::complex<double>> z,
                                   Alpha alpha);

/// Coefficients drawn by pd_type_check: general complex vectors, or real ones.
enum class PdDomain { complex, real };

struct PdReport {
  bool pass = true;
  double worst_re = 0.0;   // most negative real part seen
  double worst_im = 0.0;   // largest |imaginary part| seen
  ComplexVector worst_z;   // witness of the first violated condition (or of worst_re)
  std::size_t trials = 0;  // random vectors, plus the n indicator vectors
  double tolerance = 0.0;  // after scaling by max(1, sum |F_jk| max|z_i|^alpha)
};

/// Re(bilinear_form) >= -tol and |Im(bilinear_form)| <= tol over the indicator
/// vectors and `trials` random coefficient vectors.
PdReport pd_type_check(const ComplexMatrix& F, Alpha alpha, std::size_t trials,
                       std::uint64_t seed = 0x9d7c0ffeeULL, double tol = 1e-10,
                       PdDomain domain = PdDomain::complex);

/// sum_jk |F_jk|.
double vitali_variation(const ComplexMatrix& F);

struct FrechetBracket {
  double lower = 0.0;  // best Re(bilinear_form(F, a)) found with |a_i| <= 1
  double upper = 0.0;  // vitali_variation(F)
  ComplexVector argmax;
  std::size_t candidates = 0;
};

/// Candidate search for sup Re sum a_i a_j^<alpha-1> F_ij over |a_i| <= 1:
/// sign patterns (exhaustive when 2^n fits the budget) and random points of
/// the polydisc. The upper end of the bracket is the Vitali variation.
FrechetBracket frechet_type_sup(const ComplexMatrix& F, Alpha alpha, std::size_t search_budget,
                                std::uint64_t seed = 0xf2ec4e7ULL);

/// ||dxi(A)||_alpha: covariation norm of sum_{j in A} dxi_j.
double increment_norm(const IncrementLaw& law, const CellSet& cells);

/// nu(A) = S_alpha(1) sum_{j in A} ||dxi_j||_alpha, with the real moment
/// constant for real laws and the isotropic one for complex laws.
double control_measure_nu(const IncrementLaw& law, const CellSet& cells);

/// Same, from the diagonal of F.
double control_measure_nu(const ComplexMatrix& F, Alpha alpha, Mode mode, const CellSet& cells);

/// sum_j f_j F(A_j, B) with F(A_j, B) = sum_{k in B} F_jk.
std::complex<double> mt_partial(std::span<const std::complex<double>> f, const CellSet& B,
                                const ComplexMatrix& F);

/// sum_jk f_j g_k^<alpha-1> F_jk, evaluated in both iteration orders; throws
/// IntegrityError if they differ by more than 1e-12 (relative to the scale of
/// the summands).
std::complex<double> mt_integral(std::span<const std::complex<double>> f,
                                 std::span<const std::complex<double>> g, const ComplexMatrix& F,
                                 Alpha alpha);

/// Outcome of the runtime checks that replace the inequalities of the
/// integrability proposition on an atomic law.
struct IntegrabilityReport {
  std::size_t item1_cases = 0, item1_violations = 0;
  std::size_t item2_cases = 0, item2_violations = 0;
  std::size_t item3_cases = 0, item3_violations = 0;
  std::size_t item4_cases = 0, item4_violations = 0;
  double worst_item1_ratio = 0.0;  // ||dxi(A)|| / (Psi nu(A))
  double worst_item3_ratio = 0.0;  // |mt_partial| / bound

  bool pass() const noexcept {
    return item1_violations + item2_violations + item3_violations + item4_violations == 0;
  }
};

/// Item 1: ||dxi(A)|| <= Psi_alpha nu(A) for every cell subset (all subsets up
/// to 12 cells, random ones beyond). Item 2/4: null cells carry no F mass and
/// no mt_partial mass. Item 3: |mt_partial(f, B)| <= Psi ||dxi(B)||^(alpha-1)
/// sum |f_j| nu({j}) for `trials` random (f, B).
IntegrabilityReport integrability_check(const IncrementLaw& law, const ComplexMatrix& F, std::size_t trials,
                        std::uint64_t seed, double slack = 1e-10);

}  // namespace stable_spectra
