#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace pairzero {

// Base for every failure of a numerical routine. Callers that only need to
// tell "bad input" from "numerics gave up" catch this versus
// std::invalid_argument.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Iteration cap reached. Carries whatever the routine had when it stopped.
class ConvergenceError : public NumericalError {
 public:
  ConvergenceError(const std::string& what, std::vector<std::complex<double>> partial = {})
      : NumericalError(what), partial_(std::move(partial)) {}
  const std::vector<std::complex<double>>& partial() const noexcept { return partial_; }

 private:
  std::vector<std::complex<double>> partial_;
};

// Eigenvector requested inside a (near-)degenerate subspace.
class DegenerateStateError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// Zero pattern does not have the +/- pairing structure of a pairing eigenstate.
class StructuralError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// Quantities that must agree (e.g. imaginary parts that should cancel) do not.
class InconsistencyError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// Parameter point where the pairing-energy map is undefined (gamma_x or gamma_y zero).
class SingularPointError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace pairzero
