#include "polystab/spectral.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

namespace polystab {

void OperatorMatrix::validate() const {
  if (!entries.allFinite()) throw InvariantError("operator matrix has non-finite entries");
  if (basis_tag.empty()) throw InvariantError("operator matrix needs a basis tag");
}

DiagonalGenerator::DiagonalGenerator(std::vector<Complex> eigenvalues,
                                     std::vector<std::string> mode_labels,
                                     std::optional<double> stability_exponent_hint)
    : eigenvalues_(std::move(eigenvalues)),
      mode_labels_(std::move(mode_labels)),
      hint_(stability_exponent_hint) {
  if (eigenvalues_.empty()) throw InvariantError("generator needs at least one mode");
  if (eigenvalues_.size() != mode_labels_.size()) {
    throw InvariantError("one mode label per eigenvalue required");
  }
  if (hint_ && *hint_ < 0) throw InvariantError("stability exponent hint must be >= 0");
  for (const Complex& ev : eigenvalues_) {
    if (!std::isfinite(ev.real()) || !std::isfinite(ev.imag())) {
      throw InvariantError("non-finite eigenvalue");
    }
    if (!(ev.real() < 0)) {
      throw InvariantError("eigenvalues must have strictly negative real part");
    }
  }
  // Pairwise distinctness, checked on a sorted copy.
  std::vector<Complex> sorted = eigenvalues_;
  std::sort(sorted.begin(), sorted.end(), [](const Complex& a, const Complex& b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i] == sorted[i - 1]) {
      throw InvariantError("eigenvalues must be pairwise distinct");
    }
  }
}

DiagonalGenerator DiagonalGenerator::from_eigenvalues(std::vector<Complex> eigenvalues,
                                                      std::optional<double> hint) {
  std::vector<std::string> labels(eigenvalues.size());
  for (std::size_t k = 0; k < labels.size(); ++k) labels[k] = "k=" + std::to_string(k + 1);
  return DiagonalGenerator(std::move(eigenvalues), std::move(labels), hint);
}

Matrix DiagonalGenerator::matrix() const {
  Matrix m = Matrix::Zero(mode_count(), mode_count());
  for (Index k = 0; k < mode_count(); ++k) m(k, k) = eigenvalues_[static_cast<std::size_t>(k)];
  return m;
}

double DiagonalGenerator::truncation_horizon() const {
  double slowest = std::abs(eigenvalues_.front().real());
  for (const Complex& ev : eigenvalues_) slowest = std::min(slowest, std::abs(ev.real()));
  return 1.0 / slowest;
}

Complex principal_power(Complex minus_lambda, double beta) {
  if (!(minus_lambda.real() > 0) && minus_lambda.imag() == 0) {
    throw InvariantError("principal power evaluated on the branch cut");
  }
  return std::exp(beta * std::log(minus_lambda));
}

namespace {

OperatorMatrix diagonal_power(const DiagonalGenerator& gen, double beta) {
  const Index n = gen.mode_count();
  Matrix m = Matrix::Zero(n, n);
  if (beta == 0.0) {
    m.setIdentity();
  } else {
    for (Index k = 0; k < n; ++k) {
      m(k, k) = principal_power(-gen.eigenvalues()[static_cast<std::size_t>(k)], beta);
    }
  }
  return OperatorMatrix{std::move(m), "modal"};
}

}  // namespace

OperatorMatrix fractional_power(const DiagonalGenerator& gen, double beta) {
  if (beta < 0) throw InvariantError("fractional power requires beta >= 0");
  return diagonal_power(gen, beta);
}

OperatorMatrix fractional_power_inverse(const DiagonalGenerator& gen, double beta) {
  if (beta < 0) throw InvariantError("fractional power requires beta >= 0");
  return diagonal_power(gen, -beta);
}

double operator_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  if (!m.allFinite()) throw InvariantError("operator norm of non-finite matrix");
  if (m.rows() == 1 || m.cols() == 1) return m.norm();
  Eigen::BDCSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

double graph_norm(const DiagonalGenerator& gen, double beta, const OperatorMatrix& factor) {
  factor.validate();
  if (factor.rows() != gen.mode_count()) {
    throw DimensionError("factor row count must match the generator mode count");
  }
  if (beta < 0) throw InvariantError("graph norm requires beta >= 0");
  Matrix scaled = factor.entries;
  for (Index k = 0; k < gen.mode_count(); ++k) {
    scaled.row(k) *= principal_power(-gen.eigenvalues()[static_cast<std::size_t>(k)], beta);
  }
  return operator_norm(scaled);
}

}  // namespace polystab
