#include "polystab/resolvent.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>
#include <cmath>

namespace polystab {

double smallest_singular_value(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::BDCSVD<Matrix> svd(m);
  const auto& sv = svd.singularValues();
  return sv(sv.size() - 1);
}

namespace {

Matrix checked_inverse(const Matrix& m, Complex lambda) {
  Matrix shifted = -m;
  shifted.diagonal().array() += lambda;
  double scale = m.norm() + std::abs(lambda);
  if (smallest_singular_value(shifted) <= kSingularRelTol * scale) {
    throw SpectralPointError("spectral point: lambda I - m is singular to working precision");
  }
  return shifted.partialPivLu().inverse();
}

}  // namespace

Matrix resolvent_direct(const Matrix& m, Complex lambda) {
  if (m.rows() != m.cols()) throw DimensionError("resolvent of non-square matrix");
  if (!m.allFinite() || !std::isfinite(lambda.real()) || !std::isfinite(lambda.imag())) {
    throw InvariantError("resolvent with non-finite input");
  }
  return checked_inverse(m, lambda);
}

Matrix resolvent_triangular(const BlockSystem& sys, Complex lambda) {
  if (sys.kind() != BlockKind::Triangular) {
    throw InvariantError("resolvent_triangular needs a triangular system");
  }
  Matrix r1 = resolvent_direct(sys.a1(), lambda);
  Matrix r2 = resolvent_direct(sys.a2(), lambda);
  Matrix out = Matrix::Zero(sys.dim(), sys.dim());
  out.topLeftCorner(sys.dim1(), sys.dim1()) = r1;
  out.bottomRightCorner(sys.dim2(), sys.dim2()) = r2;
  // R1 (B C) R2 evaluated in factored order: (R1 B)(C R2).
  out.topRightCorner(sys.dim1(), sys.dim2()) =
      (r1 * sys.coupling_12().left.entries) * (sys.coupling_12().right.entries * r2);
  return out;
}

Matrix resolvent_full_schur(const BlockSystem& sys, Complex lambda) {
  if (sys.kind() != BlockKind::Full) {
    throw InvariantError("resolvent_full_schur needs a full system");
  }
  const Matrix& b1 = sys.coupling_12().left.entries;   // N1 x p1
  const Matrix& c2 = sys.coupling_12().right.entries;  // p1 x N2
  const Matrix& b2 = sys.coupling_21()->left.entries;  // N2 x p2
  const Matrix& c1 = sys.coupling_21()->right.entries; // p2 x N1
  const Index n1 = sys.dim1(), n2 = sys.dim2(), p1 = b1.cols();

  Matrix r1 = resolvent_direct(sys.a1(), lambda);
  Matrix r2 = resolvent_direct(sys.a2(), lambda);

  Matrix s1inv;  // Schur complement inverse on X2
  Matrix u = r1 * b1;      // N1 x p1
  Matrix c1r1 = c1 * r1;   // p2 x N1
  if (p1 == 0) {
    s1inv = r2;
  } else {
    Matrix c2r2 = c2 * r2;              // p1 x N2
    Matrix loop21 = c1r1 * b1;          // p2 x p1, C1 R1 B1
    Matrix loop12 = c2r2 * b2;          // p1 x p2, C2 R2 B2
    Matrix d = Matrix::Identity(p1, p1) - loop12 * loop21;
    if (smallest_singular_value(d) <= kLoopSingularTol) {
      throw LoopSingularError(
          "one in spectrum of loop operator: D_lambda is singular to working precision");
    }
    Matrix dinv = d.partialPivLu().inverse();
    s1inv = r2 + (r2 * b2) * (loop21 * (dinv * c2r2));
  }

  Matrix w = b2 * c1r1;   // N2 x N1
  Matrix v = c2 * s1inv;  // p1 x N2

  Matrix out = Matrix::Zero(sys.dim(), sys.dim());
  out.topLeftCorner(n1, n1) = r1 + u * (v * w);
  out.topRightCorner(n1, n2) = u * v;
  out.bottomLeftCorner(n2, n1) = s1inv * w;
  out.bottomRightCorner(n2, n2) = s1inv;
  return out;
}

}  // namespace polystab
