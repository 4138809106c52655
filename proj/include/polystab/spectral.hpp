#pragma once

#include <optional>
#include <string>
#include <vector>

#include "polystab/types.hpp"

namespace polystab {

/// Dense complex matrix together with the orthonormal coordinate frame its
/// entries refer to. All truncated operators (coupling factors, fractional
/// powers) are carried in this form.
struct OperatorMatrix {
  Matrix entries;
  std::string basis_tag = "modal";

  Index rows() const { return entries.rows(); }
  Index cols() const { return entries.cols(); }

  /// Throws InvariantError on non-finite entries or an empty basis tag.
  void validate() const;
};

/// Truncated Riesz-spectral generator, diagonal in its (orthonormal) eigenbasis.
/// Invariants enforced on construction: every eigenvalue lies strictly in the
/// open left half-plane, eigenvalues are pairwise distinct, and there is one
/// label per mode.
class DiagonalGenerator {
 public:
  DiagonalGenerator(std::vector<Complex> eigenvalues, std::vector<std::string> mode_labels,
                    std::optional<double> stability_exponent_hint = std::nullopt);

  /// Labels generated as "k=1", "k=2", ...
  static DiagonalGenerator from_eigenvalues(std::vector<Complex> eigenvalues,
                                            std::optional<double> hint = std::nullopt);

  Index mode_count() const { return static_cast<Index>(eigenvalues_.size()); }
  const std::vector<Complex>& eigenvalues() const { return eigenvalues_; }
  const std::vector<std::string>& mode_labels() const { return mode_labels_; }
  std::optional<double> stability_exponent_hint() const { return hint_; }

  /// The generator as a dense diagonal matrix.
  Matrix matrix() const;

  /// Horizon up to which decay curves of this truncation are meaningful:
  /// 1 / min_k |Re lambda_k|. Past it the slowest retained mode's exponential
  /// tail dominates and power-law fits see a truncation artifact.
  double truncation_horizon() const;

 private:
  std::vector<Complex> eigenvalues_;
  std::vector<std::string> mode_labels_;
  std::optional<double> hint_;
};

/// (-lambda)^beta through the principal branch of the complex logarithm.
Complex principal_power(Complex minus_lambda, double beta);

/// diag((-lambda_k)^beta). beta = 0 gives the identity; beta < 0 is rejected.
OperatorMatrix fractional_power(const DiagonalGenerator& gen, double beta);

/// diag((-lambda_k)^{-beta}), the bounded inverse of fractional_power.
/// Well-defined because every -lambda_k has strictly positive real part.
OperatorMatrix fractional_power_inverse(const DiagonalGenerator& gen, double beta);

/// Largest singular value of an arbitrary dense complex matrix.
double operator_norm(const Matrix& m);

/// Truncated graph norm ||(-A)^beta B|| = sigma_max(fractional_power * factor).
/// The adjoint-side norm ||(-A*)^gamma C*|| is obtained by passing the
/// conjugate transpose of the C-factor; for a diagonal A the two coincide
/// because the singular values only see |(-lambda_k)^gamma|.
double graph_norm(const DiagonalGenerator& gen, double beta, const OperatorMatrix& factor);

}  // namespace polystab
