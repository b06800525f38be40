#include "stable_spectra/bimeasure.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "stable_spectra/errors.hpp"
#include "stable_spectra/rng.hpp"

namespace stable_spectra {
namespace {

void require_size(const ComplexMatrix& F, std::size_t n, const char* what) {
  if (n != F.size()) {
    std::ostringstream msg;
    msg << what << ": vector of length " << n << " against " << F.size() << " cells";
    throw ValidationError(msg.str());
  }
}

void require_cells(const CellSet& cells, std::size_t n, const char* what) {
  for (auto c : cells) {
    if (c >= n) {
      std::ostringstream msg;
      msg << what << ": cell index " << c << " out of range";
      throw ValidationError(msg.str());
    }
  }
}

ComplexVector indicator(std::size_t n, const CellSet& cells) {
  ComplexVector v(n, 0.0);
  for (auto c : cells) v[c] = 1.0;
  return v;
}

std::complex<double> random_unit_disc(Rng& rng) {
  const double r = std::sqrt(rng.uniform());
  return std::polar(r, 2.0 * std::numbers::pi * rng.uniform());
}

}  // namespace

IncrementLaw::IncrementLaw(std::vector<double> frequencies, DiscreteSpectralMeasure joint_measure,
                           Alpha alpha)
    : frequencies_(std::move(frequencies)), joint_(std::move(joint_measure)), alpha_(alpha) {
  if (joint_.dimension() != frequencies_.size()) {
    std::ostringstream msg;
    msg << "increment law: " << frequencies_.size() << " frequencies but joint measure of dimension "
        << joint_.dimension();
    throw ValidationError(msg.str());
  }
  for (std::size_t j = 0; j < frequencies_.size(); ++j) {
    if (!std::isfinite(frequencies_[j])) throw ValidationError("increment law: non-finite frequency");
    if (j > 0 && !(frequencies_[j] > frequencies_[j - 1])) {
      throw ValidationError("increment law: frequencies must be strictly increasing");
    }
  }
  if (!joint_.is_symmetric(1e-10)) {
    throw ValidationError("increment law: joint spectral measure is not symmetric");
  }
}

DiscreteBimeasure bimeasure_from_increments(const IncrementLaw& law, const ThetaGridSpec& grid) {
  const std::size_t n = law.size();
  DiscreteBimeasure out;
  out.frequencies = law.frequencies();
  out.F = ComplexMatrix(n);
  ComplexVector ej(n, 0.0);
  ComplexVector ek(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    ej[j] = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
      ek[k] = 1.0;
      out.F(j, k) = covariation_exact(law.joint_measure(), law.alpha(), ej, ek);
      ek[k] = 0.0;
    }
    ej[j] = 0.0;
  }
  out.condition_a = check_additivity_condition(law.joint_measure(), grid);
  return out;
}

std::complex<double> bilinear_form(const ComplexMatrix& F, std::span<const std::complex<double>> z,
                                   Alpha alpha) {
  require_size(F, z.size(), "bilinear_form");
  const std::size_t n = z.size();
  ComplexVector zp(n);
  for (std::size_t j = 0; j < n; ++j) zp[j] = signed_power(z[j], alpha.value() - 1.0);
  std::complex<double> s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) s += z[i] * zp[j] * F(i, j);
  }
  return s;
}

PdReport pd_type_check(const ComplexMatrix& F, Alpha alpha, std::size_t trials,
                       std::uint64_t seed, double tol, PdDomain domain) {
  if (trials == 0) throw ParameterError("pd_type_check: trials must be >= 1");
  if (!(tol >= 0.0)) throw ParameterError("pd_type_check: tolerance must be >= 0");
  const std::size_t n = F.size();
  PdReport report;
  report.tolerance = tol;
  const double vitali = vitali_variation(F);

  auto examine = [&](const ComplexVector& z) {
    double zmax = 0.0;
    for (auto v : z) zmax = std::max(zmax, std::abs(v));
    const double scaled = tol * std::max(1.0, vitali * std::pow(zmax, alpha.value()));
    report.tolerance = std::max(report.tolerance, scaled);
    const auto b = bilinear_form(F, z, alpha);
    ++report.trials;
    const bool bad = b.real() < -scaled || std::abs(b.imag()) > scaled;
    if (b.real() < report.worst_re) {
      report.worst_re = b.real();
      if (report.pass) report.worst_z = z;
    }
    report.worst_im = std::max(report.worst_im, std::abs(b.imag()));
    if (bad && report.pass) {
      report.pass = false;
      report.worst_z = z;
    }
  };

  ComplexVector z(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    z[j] = 1.0;
    examine(z);
    z[j] = 0.0;
  }
  Rng rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    for (std::size_t j = 0; j < n; ++j) {
      z[j] = domain == PdDomain::complex ? std::complex<double>(rng.normal(), rng.normal())
                                         : std::complex<double>(rng.normal(), 0.0);
    }
    examine(z);
  }
  return report;
}

double vitali_variation(const ComplexMatrix& F) {
  double s = 0.0;
  for (std::size_t j = 0; j < F.size(); ++j) {
    for (std::size_t k = 0; k < F.size(); ++k) s += std::abs(F(j, k));
  }
  return s;
}

FrechetBracket frechet_type_sup(const ComplexMatrix& F, Alpha alpha, std::size_t search_budget,
                                std::uint64_t seed) {
  if (search_budget == 0) throw ParameterError("frechet_type_sup: search_budget must be >= 1");
  const std::size_t n = F.size();
  FrechetBracket out;
  out.upper = vitali_variation(F);
  out.argmax.assign(n, 0.0);
  if (n == 0) return out;

  auto consider = [&](const ComplexVector& a) {
    const double v = bilinear_form(F, a, alpha).real();
    ++out.candidates;
    if (v > out.lower) {
      out.lower = v;
      out.argmax = a;
    }
  };

  ComplexVector a(n);
  const bool exhaustive = n < 63 && (std::size_t{1} << n) <= search_budget / 2;
  Rng rng(seed);
  const std::size_t sign_budget = exhaustive ? (std::size_t{1} << n) : search_budget / 2;
  for (std::size_t m = 0; m < sign_budget; ++m) {
    for (std::size_t j = 0; j < n; ++j) {
      const bool neg = exhaustive ? ((m >> j) & 1U) != 0U : (rng.next_u64() & 1U) != 0U;
      a[j] = neg ? -1.0 : 1.0;
    }
    consider(a);
  }
  while (out.candidates < search_budget) {
    const bool on_torus = (out.candidates & 1U) == 0U;
    for (std::size_t j = 0; j < n; ++j) {
      a[j] = on_torus ? std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform()) : random_unit_disc(rng);
    }
    consider(a);
  }
  // The search is a lower bound of the supremum; never report above the certificate.
  out.lower = std::min(out.lower, out.upper);
  return out;
}

double increment_norm(const IncrementLaw& law, const CellSet& cells) {
  require_cells(cells, law.size(), "increment_norm");
  if (cells.empty()) return 0.0;
  const auto v = indicator(law.size(), cells);
  return covariation_norm(law.joint_measure(), law.alpha(), v);
}

double control_measure_nu(const ComplexMatrix& F, Alpha alpha, Mode mode, const CellSet& cells) {
  require_cells(cells, F.size(), "control_measure_nu");
  if (cells.empty()) return 0.0;
  const double s1 = mode == Mode::real ? s_alpha_real(alpha, 1.0) : s_alpha_iso(alpha, 1.0);
  double total = 0.0;
  for (auto j : cells) total += std::pow(std::max(F(j, j).real(), 0.0), 1.0 / alpha.value());
  return s1 * total;
}

double control_measure_nu(const IncrementLaw& law, const CellSet& cells) {
  require_cells(cells, law.size(), "control_measure_nu");
  if (cells.empty()) return 0.0;
  const double s1 = law.joint_measure().mode() == Mode::real ? s_alpha_real(law.alpha(), 1.0)
                                                             : s_alpha_iso(law.alpha(), 1.0);
  double total = 0.0;
  for (auto j : cells) total += increment_norm(law, {j});
  return s1 * total;
}

std::complex<double> mt_partial(std::span<const std::complex<double>> f, const CellSet& B,
                                const ComplexMatrix& F) {
  require_size(F, f.size(), "mt_partial");
  require_cells(B, F.size(), "mt_partial");
  std::complex<double> s = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) {
    std::complex<double> fb = 0.0;
    for (auto k : B) fb += F(j, k);
    s += f[j] * fb;
  }
  return s;
}

std::complex<double> mt_integral(std::span<const std::complex<double>> f,
                                 std::span<const std::complex<double>> g, const ComplexMatrix& F,
                                 Alpha alpha) {
  require_size(F, f.size(), "mt_integral");
  require_size(F, g.size(), "mt_integral");
  const std::size_t n = F.size();
  ComplexVector gp(n);
  for (std::size_t k = 0; k < n; ++k) gp[k] = signed_power(g[k], alpha.value() - 1.0);

  // I_1: integrate f against F(., {k}) first, then g^<alpha-1> against the result.
  std::complex<double> i1 = 0.0;
  double scale = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<double> inner = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      inner += f[j] * F(j, k);
      scale += std::abs(f[j] * F(j, k) * gp[k]);
    }
    i1 += gp[k] * inner;
  }
  // I_2: integrate g^<alpha-1> against F({j}, .) first, then f.
  std::complex<double> i2 = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    std::complex<double> inner = 0.0;
    for (std::size_t k = 0; k < n; ++k) inner += gp[k] * F(j, k);
    i2 += f[j] * inner;
  }
  if (std::abs(i1 - i2) > 1e-12 * std::max(1.0, scale)) {
    std::ostringstream msg;
    msg << "mt_integral: iteration orders disagree (|I1 - I2| = " << std::abs(i1 - i2) << ")";
    throw IntegrityError(msg.str());
  }
  return i1;
}

IntegrabilityReport integrability_check(const IncrementLaw& law, const ComplexMatrix& F, std::size_t trials,
                        std::uint64_t seed, double slack) {
  const std::size_t n = law.size();
  require_size(F, n, "integrability_check");
  const Alpha alpha = law.alpha();
  const double psi = psi_alpha(alpha);
  IntegrabilityReport r;

  std::vector<double> nu_cell(n);
  for (std::size_t j = 0; j < n; ++j) nu_cell[j] = control_measure_nu(law, {j});

  Rng rng(seed);
  auto random_subset = [&]() {
    CellSet s;
    for (std::size_t j = 0; j < n; ++j) {
      if (rng.next_u64() & 1U) s.push_back(j);
    }
    if (s.empty() && n > 0) s.push_back(static_cast<std::size_t>(rng.next_u64() % n));
    return s;
  };

  // Item 1 over subsets.
  auto item1 = [&](const CellSet& A) {
    ++r.item1_cases;
    const double lhs = increment_norm(law, A);
    double nu = 0.0;
    for (auto j : A) nu += nu_cell[j];
    const double rhs = psi * nu;
    if (rhs > 0.0) r.worst_item1_ratio = std::max(r.worst_item1_ratio, lhs / rhs);
    if (lhs > rhs + slack) ++r.item1_violations;
  };
  if (n <= 12) {
    for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
      CellSet A;
      for (std::size_t j = 0; j < n; ++j) {
        if ((mask >> j) & 1U) A.push_back(j);
      }
      item1(A);
    }
  } else {
    for (std::size_t t = 0; t < std::max<std::size_t>(trials, 1); ++t) item1(random_subset());
  }

  // Items 2 and 4 on null cells.
  for (std::size_t j = 0; j < n; ++j) {
    if (nu_cell[j] > 0.0) continue;
    ++r.item2_cases;
    double mass = 0.0;
    for (std::size_t k = 0; k < n; ++k) mass += std::abs(F(j, k)) + std::abs(F(k, j));
    if (mass > slack) ++r.item2_violations;
    ComplexVector f(n);
    for (auto& v : f) v = random_unit_disc(rng);
    ++r.item4_cases;
    if (std::abs(mt_partial(f, {j}, F)) > slack) ++r.item4_violations;
  }

  // Item 3 on random step functions and target sets.
  for (std::size_t t = 0; t < trials; ++t) {
    ComplexVector f(n);
    for (auto& v : f) v = 3.0 * random_unit_disc(rng);
    const CellSet B = random_subset();
    const double lhs = std::abs(mt_partial(f, B, F));
    double weighted = 0.0;
    for (std::size_t j = 0; j < n; ++j) weighted += std::abs(f[j]) * nu_cell[j];
    const double rhs = psi * std::pow(increment_norm(law, B), alpha.value() - 1.0) * weighted;
    ++r.item3_cases;
    if (rhs > 0.0) r.worst_item3_ratio = std::max(r.worst_item3_ratio, lhs / rhs);
    if (lhs > rhs + slack) ++r.item3_violations;
  }
  return r;
}

}  // namespace stable_spectra
