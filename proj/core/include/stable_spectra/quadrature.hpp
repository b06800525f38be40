#pragma once

// Quadrature primitives shared by the identity checks and the time-domain
// coefficient routines: Gauss-Legendre rules, geometrically graded panels for
// endpoint singularities, and half-period summation with Wynn-epsilon
// acceleration for slowly decaying oscillatory tails.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stable_spectra/errors.hpp"

namespace stable_spectra::quad {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Rule of order `n` (n >= 1). Rules are computed once and cached.
const GaussLegendreRule& gauss_legendre(int n);

/// Integral of f over [a, b] with a single Gauss-Legendre rule. `f` may
/// return double or std::complex<double>.
template <class F>
auto integrate_gl(F&& f, double a, double b, const GaussLegendreRule& rule) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  using R = decltype(f(mid));
  R sum{};
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  }
  return sum * half;
}

/// Composite rule: `panels` equal panels, each with an order-`order` rule.
template <class F>
auto integrate_composite(F&& f, double a, double b, int panels, int order = 20) {
  const auto& rule = gauss_legendre(order);
  const double h = (b - a) / panels;
  using R = decltype(f(a));
  R sum{};
  for (int k = 0; k < panels; ++k) {
    sum += integrate_gl(f, a + k * h, a + (k + 1) * h, rule);
  }
  return sum;
}

/// Behaviour f(x) ~ coeff * |x - x0|^exponent near a graded endpoint x0. When
/// supplied, the innermost sliver [x0, x0 + delta] is added analytically.
struct LeadingTerm {
  double coeff = 0.0;
  double exponent = 0.0;  // must be > -1
};

struct GradedOptions {
  bool grade_left = false;
  bool grade_right = false;
  int levels = 52;  // innermost panel width is (b - a) * 2^-levels
  int order = 16;
  std::optional<LeadingTerm> left_leading;
  std::optional<LeadingTerm> right_leading;
};

/// Integral over [a, b] of a function with integrable algebraic singularities
/// or kinks at flagged endpoints. Panels halve in width towards each graded
/// endpoint; each panel uses a Gauss-Legendre rule.
template <class F>
auto integrate_graded(F&& f, double a, double b, const GradedOptions& opt) {
  using R = decltype(f(a));
  const auto& rule = gauss_legendre(opt.order);
  const double len = b - a;
  if (len == 0.0) return R{};

  auto sliver = [&](const std::optional<LeadingTerm>& lead, double width) {
    if (!lead) return R{};
    return R(lead->coeff * std::pow(width, lead->exponent + 1.0) / (lead->exponent + 1.0));
  };

  // Graded towards `x0`, covering the half-open span of length `span` away from it.
  auto graded_half = [&](double x0, double span, int dir,
                         const std::optional<LeadingTerm>& lead) {
    R sum{};
    double outer = span;
    for (int k = 0; k < opt.levels; ++k) {
      const double inner = 0.5 * outer;
      const double p = x0 + dir * inner;
      const double q = x0 + dir * outer;
      sum += dir > 0 ? integrate_gl(f, p, q, rule) : integrate_gl(f, q, p, rule);
      outer = inner;
    }
    return sum + sliver(lead, outer);
  };

  if (opt.grade_left && opt.grade_right) {
    return graded_half(a, 0.5 * len, +1, opt.left_leading) +
           graded_half(b, 0.5 * len, -1, opt.right_leading);
  }
  if (opt.grade_left) return graded_half(a, len, +1, opt.left_leading);
  if (opt.grade_right) return graded_half(b, len, -1, opt.right_leading);
  return integrate_gl(f, a, b, rule);
}

struct ExtrapolationResult {
  double value = 0.0;
  double error = 0.0;  // heuristic error estimate
};

/// Wynn epsilon-algorithm limit of a sequence of partial sums.
ExtrapolationResult wynn_epsilon(std::span<const double> partial_sums);

struct OscillatoryOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-12;
  int min_panels = 24;
  int max_panels = 4000;
  int order = 20;
  int window = 48;  // partial sums fed to the epsilon table
};

struct OscillatoryResult {
  double value = 0.0;
  double error = 0.0;
  int panels = 0;
};

/// Integral of f over [start, inf) where f changes sign every `half_period`
/// starting at `start` (start must be a zero of the oscillating factor) and
/// decays algebraically. Panel integrals form an alternating series whose
/// partial sums are accelerated with the epsilon algorithm. Throws
/// NumericalError if the accelerated tail does not settle.
template <class F>
OscillatoryResult integrate_oscillatory_tail(F&& f, double start, double half_period,
                                             const OscillatoryOptions& opt = {}) {
  const auto& rule = gauss_legendre(opt.order);
  std::vector<double> sums;
  sums.reserve(static_cast<std::size_t>(opt.max_panels));
  double running = 0.0;
  double last_estimate = 0.0;
  int stable_checks = 0;
  for (int k = 0; k < opt.max_panels; ++k) {
    const double lo = start + k * half_period;
    running += integrate_gl(f, lo, lo + half_period, rule);
    sums.push_back(running);
    if (k + 1 < opt.min_panels) continue;
    const std::size_t w = std::min<std::size_t>(sums.size(), static_cast<std::size_t>(opt.window));
    const auto est = wynn_epsilon(std::span<const double>(sums).last(w));
    const double tol = std::max(opt.abs_tol, opt.rel_tol * std::abs(est.value));
    const double change = std::abs(est.value - last_estimate);
    last_estimate = est.value;
    if (change < tol && est.error < tol) {
      if (++stable_checks >= 2) return {est.value, std::max(change, est.error), k + 1};
    } else {
      stable_checks = 0;
    }
  }
  throw NumericalError("oscillatory tail did not converge after " +
                       std::to_string(opt.max_panels) + " half-periods (last estimate " +
                       std::to_string(last_estimate) + ", start " + std::to_string(start) +
                       ", half-period " + std::to_string(half_period) + ")");
}

}  // namespace stable_spectra::quad
