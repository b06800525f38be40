#include "stable_spectra/rng.hpp"

#include <cmath>
#include <numbers>

namespace stable_spectra {

double Rng::exponential() { return -std::log(uniform()); }

double Rng::normal() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_normal_;
  }
  const double r = std::sqrt(-2.0 * std::log(uniform()));
  const double theta = 2.0 * std::numbers::pi * uniform();
  cached_normal_ = r * std::sin(theta);
  has_cached_ = true;
  return r * std::cos(theta);
}

}  // namespace stable_spectra
