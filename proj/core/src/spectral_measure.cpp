#include "stable_spectra/spectral_measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "parallel.hpp"
#include "stable_spectra/errors.hpp"

namespace stable_spectra {
namespace {

constexpr double kSphereTol = 1e-9;
constexpr double kMergeTol = 1e-12;

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

double distance_to_negation(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] + b[i]) * (a[i] + b[i]);
  return std::sqrt(s);
}

void require_theta(const DiscreteSpectralMeasure& m, std::span<const double> theta) {
  if (theta.size() != m.real_dimension()) {
    std::ostringstream msg;
    msg << "theta has " << theta.size() << " real coordinates, measure expects "
        << m.real_dimension();
    throw ValidationError(msg.str());
  }
}

struct Triple {
  std::size_t i, j, k;
};

std::vector<Triple> triples_for(std::size_t d, TripleMode mode) {
  std::vector<Triple> out;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i; j < d; ++j) {
      for (std::size_t k = j; k < d; ++k) {
        if (i == j && j == k) continue;
        if (mode == TripleMode::pairwise_distinct && (i == j || j == k)) continue;
        out.push_back({i, j, k});
      }
    }
  }
  return out;
}

}  // namespace

const char* to_string(Mode mode) { return mode == Mode::real ? "real" : "complex"; }

const char* to_string(TripleMode mode) {
  return mode == TripleMode::literal ? "literal" : "pairwise";
}

DiscreteSpectralMeasure::DiscreteSpectralMeasure(Mode mode, std::size_t dimension,
                                                 std::vector<Atom> atoms)
    : mode_(mode), dimension_(dimension) {
  if (dimension == 0) throw ValidationError("spectral measure dimension must be >= 1");
  const std::size_t rd = real_dimension();
  for (auto& atom : atoms) {
    if (atom.point.size() != rd) {
      std::ostringstream msg;
      msg << "atom has " << atom.point.size() << " coordinates, expected " << rd;
      throw ValidationError(msg.str());
    }
    if (!(atom.weight > 0.0) || !std::isfinite(atom.weight)) {
      throw ValidationError("atom weights must be finite and > 0");
    }
    const double norm = std::sqrt(dot(atom.point, atom.point));
    if (!std::isfinite(norm) || std::abs(norm - 1.0) > kSphereTol) {
      std::ostringstream msg;
      msg << "atom off the unit sphere (norm " << norm << ")";
      throw ValidationError(msg.str());
    }
    for (double& x : atom.point) x /= norm;
  }
  for (auto& atom : atoms) {
    auto same = std::find_if(atoms_.begin(), atoms_.end(), [&](const Atom& kept) {
      return distance(kept.point, atom.point) <= kMergeTol;
    });
    if (same != atoms_.end()) {
      same->weight += atom.weight;
    } else {
      atoms_.push_back(std::move(atom));
    }
  }
}

DiscreteSpectralMeasure DiscreteSpectralMeasure::empty(Mode mode, std::size_t dimension) {
  return DiscreteSpectralMeasure(mode, dimension, {});
}

double DiscreteSpectralMeasure::total_mass() const noexcept {
  double m = 0.0;
  for (const auto& a : atoms_) m += a.weight;
  return m;
}

std::complex<double> DiscreteSpectralMeasure::coordinate(const Atom& atom, std::size_t j) const {
  if (mode_ == Mode::real) return {atom.point[j], 0.0};
  return {atom.point[2 * j], atom.point[2 * j + 1]};
}

bool DiscreteSpectralMeasure::is_symmetric(double tol) const {
  for (const auto& a : atoms_) {
    const bool paired = std::any_of(atoms_.begin(), atoms_.end(), [&](const Atom& b) {
      return distance_to_negation(a.point, b.point) <= tol &&
             std::abs(a.weight - b.weight) <= tol * std::max(1.0, a.weight);
    });
    if (!paired) return false;
  }
  return true;
}

DiscreteSpectralMeasure make_axes_measure(std::span<const double> weights, Mode mode) {
  if (weights.empty()) throw ParameterError("make_axes_measure: need at least one weight");
  const std::size_t d = weights.size();
  const std::size_t rd = mode == Mode::real ? d : 2 * d;
  std::vector<Atom> atoms;
  for (std::size_t i = 0; i < d; ++i) {
    if (!(weights[i] > 0.0)) throw ParameterError("make_axes_measure: weights must be > 0");
    const std::size_t c = mode == Mode::real ? i : 2 * i;
    Atom plus{std::vector<double>(rd, 0.0), weights[i]};
    plus.point[c] = 1.0;
    Atom minus{std::vector<double>(rd, 0.0), weights[i]};
    minus.point[c] = -1.0;
    atoms.push_back(std::move(plus));
    atoms.push_back(std::move(minus));
  }
  return DiscreteSpectralMeasure(mode, d, std::move(atoms));
}

DiscreteSpectralMeasure symmetrize(const DiscreteSpectralMeasure& measure) {
  std::vector<Atom> atoms;
  atoms.reserve(2 * measure.atoms().size());
  for (const auto& a : measure.atoms()) {
    atoms.push_back({a.point, 0.5 * a.weight});
    Atom neg{a.point, 0.5 * a.weight};
    for (double& x : neg.point) x = -x;
    atoms.push_back(std::move(neg));
  }
  return DiscreteSpectralMeasure(measure.mode(), measure.dimension(), std::move(atoms));
}

std::vector<double> interleave(std::span<const std::complex<double>> z) {
  std::vector<double> out;
  out.reserve(2 * z.size());
  for (auto v : z) {
    out.push_back(v.real());
    out.push_back(v.imag());
  }
  return out;
}

double phi(const DiscreteSpectralMeasure& measure, std::span<const double> theta) {
  require_theta(measure, theta);
  double s = 0.0;
  for (const auto& a : measure.atoms()) s += a.weight * std::cos(dot(theta, a.point));
  return s;
}

std::complex<double> third_derivative(const DiscreteSpectralMeasure& measure, std::size_t i,
                                      std::size_t j, std::size_t k,
                                      std::span<const double> theta) {
  require_theta(measure, theta);
  const std::size_t d = measure.dimension();
  if (i >= d || j >= d || k >= d) throw ValidationError("third_derivative: index out of range");
  std::complex<double> s = 0.0;
  for (const auto& a : measure.atoms()) {
    const auto c = measure.coordinate(a, i) * measure.coordinate(a, j) * measure.coordinate(a, k);
    s += a.weight * c * std::sin(dot(theta, a.point));
  }
  return s;
}

std::string ThetaGridSpec::describe(std::size_t real_dimension) const {
  std::ostringstream out;
  out.precision(6);
  out << "per-coordinate {";
  for (std::size_t i = 0; i < values.size(); ++i) out << (i ? ", " : "") << values[i];
  out << "} ^ " << real_dimension << ", cap " << max_points << ", seed " << seed << ", "
      << extra_points.size() << " extra point(s), refine " << refine_candidates;
  return out.str();
}

namespace {

struct Candidate {
  double value = -1.0;
  std::size_t triple = 0;
  std::vector<double> theta;
};

// Coefficient table coef[t][m] = w_m s_i s_j s_k for triple t and atom m.
struct DerivativeTable {
  std::vector<Triple> triples;
  std::vector<std::vector<std::complex<double>>> coef;
  const DiscreteSpectralMeasure* measure = nullptr;

  std::complex<double> value(std::size_t t, std::span<const double> sines) const {
    std::complex<double> s = 0.0;
    for (std::size_t m = 0; m < sines.size(); ++m) s += coef[t][m] * sines[m];
    return s;
  }

  // |g|^2 and its gradient for triple t at theta.
  double objective(std::size_t t, std::span<const double> theta, std::vector<double>& grad) const {
    const auto& atoms = measure->atoms();
    std::complex<double> g = 0.0;
    std::vector<std::complex<double>> dg(theta.size(), 0.0);
    for (std::size_t m = 0; m < atoms.size(); ++m) {
      const double u = dot(theta, atoms[m].point);
      g += coef[t][m] * std::sin(u);
      const auto cu = coef[t][m] * std::cos(u);
      for (std::size_t r = 0; r < theta.size(); ++r) dg[r] += cu * atoms[m].point[r];
    }
    grad.assign(theta.size(), 0.0);
    for (std::size_t r = 0; r < theta.size(); ++r) grad[r] = 2.0 * std::real(std::conj(g) * dg[r]);
    return std::norm(g);
  }
};

// Gradient ascent with backtracking on |g|^2 from a grid candidate.
Candidate refine(const DerivativeTable& table, Candidate c) {
  std::vector<double> theta = c.theta;
  std::vector<double> grad;
  std::vector<double> trial(theta.size());
  std::vector<double> trial_grad;
  double f = table.objective(c.triple, theta, grad);
  double step = 1.0;
  bool converged = false;
  for (int iter = 0; iter < 2000 && !converged; ++iter) {
    const double gnorm = std::sqrt(dot(grad, grad));
    if (gnorm < 1e-15) break;
    bool improved = false;
    for (int bt = 0; bt < 60; ++bt) {
      for (std::size_t r = 0; r < theta.size(); ++r) trial[r] = theta[r] + step * grad[r];
      const double ft = table.objective(c.triple, trial, trial_grad);
      if (ft > f) {
        const double gain = ft - f;
        theta.swap(trial);
        grad.swap(trial_grad);
        f = ft;
        improved = true;
        step *= 2.0;
        converged = gain <= 1e-18 * std::max(1.0, f);
        break;
      }
      step *= 0.5;
    }
    if (!improved) break;
  }
  c.theta = std::move(theta);
  c.value = std::sqrt(f);
  return c;
}

}  // namespace

AdditivityReport check_additivity_condition(const DiscreteSpectralMeasure& measure,
                                            const ThetaGridSpec& grid, double tolerance,
                                            TripleMode mode) {
  if (!(tolerance > 0.0)) throw ParameterError("check_additivity_condition: tolerance must be > 0");
  if (grid.values.empty() && grid.extra_points.empty()) {
    throw ParameterError("check_additivity_condition: empty theta grid");
  }
  const std::size_t rd = measure.real_dimension();
  AdditivityReport report;
  report.tolerance = tolerance;
  report.mode = mode;
  report.grid_spec = grid.describe(rd);
  report.worst.theta.assign(rd, 0.0);

  DerivativeTable table;
  table.measure = &measure;
  table.triples = triples_for(measure.dimension(), mode);
  const auto& atoms = measure.atoms();
  for (const auto& t : table.triples) {
    std::vector<std::complex<double>> row;
    row.reserve(atoms.size());
    for (const auto& a : atoms) {
      row.push_back(a.weight * measure.coordinate(a, t.i) * measure.coordinate(a, t.j) *
                    measure.coordinate(a, t.k));
    }
    table.coef.push_back(std::move(row));
  }
  if (table.triples.empty() || atoms.empty()) {
    report.worst.i = report.worst.j = 0;
    report.worst.k = table.triples.empty() ? 0 : 1;
    report.pass = true;
    return report;
  }

  // Enumerate (or subsample) the product grid, then append the extra points.
  const std::size_t nv = grid.values.size();
  double full = 1.0;
  for (std::size_t r = 0; r < rd && nv > 0; ++r) full *= static_cast<double>(nv);
  const bool exhaustive = nv > 0 && full <= static_cast<double>(grid.max_points);
  const std::size_t grid_points =
      nv == 0 ? 0 : (exhaustive ? static_cast<std::size_t>(full) : grid.max_points);
  const std::size_t total = grid_points + grid.extra_points.size();
  for (const auto& p : grid.extra_points) {
    if (p.size() != rd) throw ValidationError("extra grid point has wrong dimension");
  }

  auto point_at = [&](std::size_t idx, std::vector<double>& theta) {
    if (idx >= grid_points) {
      theta = grid.extra_points[idx - grid_points];
      return;
    }
    theta.resize(rd);
    if (exhaustive) {
      std::size_t rem = idx;
      for (std::size_t r = 0; r < rd; ++r) {
        theta[r] = grid.values[rem % nv];
        rem /= nv;
      }
    } else {
      Rng rng(derive_seed(grid.seed, idx));
      for (std::size_t r = 0; r < rd; ++r) theta[r] = grid.values[rng.next_u64() % nv];
    }
  };

  const std::size_t keep = static_cast<std::size_t>(std::max(grid.refine_candidates, 1));
  const std::size_t block = 4096;
  const std::size_t blocks = (total + block - 1) / block;
  std::vector<std::vector<Candidate>> best(blocks);
  detail::for_each_block(blocks, [&](std::size_t b) {
    std::vector<double> theta;
    std::vector<double> sines(atoms.size());
    auto& local = best[b];
    const std::size_t hi = std::min(total, (b + 1) * block);
    for (std::size_t idx = b * block; idx < hi; ++idx) {
      point_at(idx, theta);
      for (std::size_t m = 0; m < atoms.size(); ++m) sines[m] = std::sin(dot(theta, atoms[m].point));
      for (std::size_t t = 0; t < table.triples.size(); ++t) {
        const double v = std::abs(table.value(t, sines));
        if (local.size() < keep || v > local.back().value) {
          Candidate c{v, t, theta};
          auto pos = std::upper_bound(local.begin(), local.end(), c,
                                      [](const Candidate& x, const Candidate& y) {
                                        return x.value > y.value;
                                      });
          local.insert(pos, std::move(c));
          if (local.size() > keep) local.pop_back();
        }
      }
    }
  });

  std::vector<Candidate> merged;
  for (auto& local : best) {
    for (auto& c : local) merged.push_back(std::move(c));
  }
  std::stable_sort(merged.begin(), merged.end(),
                   [](const Candidate& x, const Candidate& y) { return x.value > y.value; });
  if (merged.size() > keep) merged.resize(keep);

  Candidate top = merged.front();
  if (grid.refine_candidates > 0) {
    for (const auto& c : merged) {
      if (c.value == 0.0) continue;
      Candidate r = refine(table, c);
      if (r.value > top.value) top = std::move(r);
    }
  }

  report.points_evaluated = total;
  report.max_abs = top.value;
  report.worst.i = table.triples[top.triple].i;
  report.worst.j = table.triples[top.triple].j;
  report.worst.k = table.triples[top.triple].k;
  report.worst.theta = top.theta;
  report.pass = report.max_abs <= tolerance;
  return report;
}

std::complex<double> VectorSample::at(std::size_t r, std::size_t j) const {
  const auto x = row(r);
  if (mode == Mode::real) return {x[j], 0.0};
  return {x[2 * j], x[2 * j + 1]};
}

std::vector<std::complex<double>> VectorSample::column(std::size_t j) const {
  if (j >= dimension) throw ValidationError("VectorSample::column: index out of range");
  std::vector<std::complex<double>> out(n);
  for (std::size_t r = 0; r < n; ++r) out[r] = at(r, j);
  return out;
}

VectorSample sample_vector(const DiscreteSpectralMeasure& measure, Alpha alpha, std::size_t n,
                           std::uint64_t seed) {
  if (!measure.is_symmetric(1e-10)) {
    throw ValidationError("sample_vector: spectral measure is not symmetric");
  }
  const auto& atoms = measure.atoms();
  // One representative per +-pair, with coefficient (2w)^(1/alpha).
  std::vector<std::size_t> reps;
  std::vector<bool> used(atoms.size(), false);
  for (std::size_t m = 0; m < atoms.size(); ++m) {
    if (used[m]) continue;
    used[m] = true;
    for (std::size_t q = m + 1; q < atoms.size(); ++q) {
      if (!used[q] && distance_to_negation(atoms[m].point, atoms[q].point) <= 1e-10) {
        used[q] = true;
        break;
      }
    }
    reps.push_back(m);
  }
  std::vector<double> coef;
  for (auto m : reps) coef.push_back(std::pow(2.0 * atoms[m].weight, 1.0 / alpha.value()));

  VectorSample out;
  out.mode = measure.mode();
  out.dimension = measure.dimension();
  out.n = n;
  const std::size_t rd = out.stride();
  out.data.assign(n * rd, 0.0);
  if (reps.empty() || n == 0) return out;

  const std::size_t blocks = (n + detail::kSampleBlock - 1) / detail::kSampleBlock;
  detail::for_each_block(blocks, [&](std::size_t b) {
    Rng rng(derive_seed(seed, b));
    const std::size_t hi = std::min(n, (b + 1) * detail::kSampleBlock);
    for (std::size_t r = b * detail::kSampleBlock; r < hi; ++r) {
      double* x = out.data.data() + r * rd;
      for (std::size_t q = 0; q < reps.size(); ++q) {
        const double z = coef[q] * draw_standard_sas(rng, alpha.value());
        const auto& s = atoms[reps[q]].point;
        for (std::size_t c = 0; c < rd; ++c) x[c] += z * s[c];
      }
    }
  });
  return out;
}

double model_char_function(const DiscreteSpectralMeasure& measure, Alpha alpha,
                           std::span<const double> theta) {
  require_theta(measure, theta);
  double e = 0.0;
  for (const auto& a : measure.atoms()) {
    e += a.weight * std::pow(std::abs(dot(theta, a.point)), alpha.value());
  }
  return std::exp(-e);
}

std::complex<double> empirical_char_function(const VectorSample& sample,
                                             std::span<const double> theta) {
  if (theta.size() != sample.stride()) throw ValidationError("theta dimension mismatch");
  if (sample.n == 0) throw ValidationError("empirical_char_function: empty sample");
  double re = 0.0;
  double im = 0.0;
  for (std::size_t r = 0; r < sample.n; ++r) {
    const double u = dot(theta, sample.row(r));
    re += std::cos(u);
    im += std::sin(u);
  }
  return {re / static_cast<double>(sample.n), im / static_cast<double>(sample.n)};
}

}  // namespace stable_spectra
