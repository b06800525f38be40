#include "stable_spectra/quadrature.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <numbers>

namespace stable_spectra::quad {
namespace {

GaussLegendreRule compute_rule(int n) {
  GaussLegendreRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Tricomi initial guess, then Newton on P_n.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0, p1 = x;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged node.
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n == 1 ? 1.0 : n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    const auto lo = static_cast<std::size_t>(i);
    const auto hi = static_cast<std::size_t>(n - 1 - i);
    rule.nodes[lo] = -x;
    rule.nodes[hi] = x;
    rule.weights[lo] = w;
    rule.weights[hi] = w;
  }
  if (n % 2 == 1) rule.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
  return rule;
}

}  // namespace

const GaussLegendreRule& gauss_legendre(int n) {
  if (n < 1) throw ParameterError("Gauss-Legendre order must be >= 1");
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<GaussLegendreRule>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<GaussLegendreRule>(compute_rule(n));
  return *slot;
}

ExtrapolationResult wynn_epsilon(std::span<const double> s) {
  const std::size_t n = s.size();
  if (n == 0) return {0.0, 0.0};
  if (n < 3) {
    return {s.back(), n == 2 ? std::abs(s[1] - s[0]) : std::abs(s[0])};
  }

  ExtrapolationResult best{s.back(), std::abs(s[n - 1] - s[n - 2])};
  std::vector<double> prev(n + 1, 0.0);  // column -1
  std::vector<double> cur(s.begin(), s.end());
  double last_even = s.back();

  for (int col = 1; cur.size() > 1; ++col) {
    std::vector<double> next(cur.size() - 1);
    bool finite = true;
    for (std::size_t k = 0; k + 1 < cur.size(); ++k) {
      const double diff = cur[k + 1] - cur[k];
      if (diff == 0.0) {
        finite = false;
        break;
      }
      next[k] = prev[k + 1] + 1.0 / diff;
      if (!std::isfinite(next[k])) {
        finite = false;
        break;
      }
    }
    if (!finite) break;
    prev = std::move(cur);
    cur = std::move(next);
    if (col % 2 == 0 && cur.size() >= 2) {
      const double est = cur.back();
      const double err = std::abs(est - cur[cur.size() - 2]) + std::abs(est - last_even);
      last_even = est;
      if (err < best.error) best = {est, err};
    }
  }
  return best;
}

}  // namespace stable_spectra::quad
