#pragma once

#include <Eigen/Core>
#include <complex>
#include <stdexcept>
#include <string>

namespace polystab {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// A documented precondition or type invariant was violated.
class InvariantError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Operand dimensions are incompatible.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// lambda*I - m is singular to working precision, i.e. lambda is a spectral
/// point of m at this truncation.
class SpectralPointError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The loop operator D_lambda = I - C2 R2 B2 C1 R1 B1 is singular to working
/// precision; lambda may belong to the spectrum of the full block matrix.
class LoopSingularError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numerical process failed: overflow, quadrature or eigensolver
/// non-convergence, insufficient data for a fit.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace polystab
