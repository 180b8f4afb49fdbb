#pragma once

#include <stdexcept>
#include <string>

namespace ngtele {

/// Parameter outside the physical domain (negative photon number, T outside (0,1], ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A Gaussian integral whose quadratic block has no positive-definite real part.
class DivergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Numerical quadrature failed to settle within its refinement budget.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Fock-space cutoff too small for the requested state.
class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Heralding event has zero probability, so the conditional state is undefined.
class ZeroProbabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ngtele
