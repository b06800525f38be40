#pragma once

#include <stdexcept>
#include <string>

namespace stable_spectra {

/// Invalid argument value (alpha out of range, negative scale, p >= alpha, ...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Structurally malformed input: off-sphere atoms, dimension mismatch,
/// asymmetric measure where a symmetric one is required, bad JSON.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A quadrature or extrapolation did not reach its target accuracy.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal consistency check failed (two routes that must agree did not).
class IntegrityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The requested operation needs data the object does not carry.
class CapabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace stable_spectra
