#include "polystab/block.hpp"

#include <Eigen/Eigenvalues>
#include <utility>

namespace polystab {

CouplingFactors CouplingFactors::zero(Index rows, Index cols) {
  CouplingFactors f;
  f.left = OperatorMatrix{Matrix::Zero(rows, 0), "modal"};
  f.right = OperatorMatrix{Matrix::Zero(0, cols), "modal"};
  return f;
}

void CouplingFactors::validate() const {
  left.validate();
  right.validate();
  if (left.cols() != right.rows()) {
    throw DimensionError("coupling factors have mismatched inner dimension");
  }
}

DecayRate DecayRate::polynomial(Rational alpha) {
  if (!(Rational(0) < alpha)) throw InvariantError("polynomial rate requires alpha > 0");
  return DecayRate(false, alpha);
}

double spectral_abscissa(const Matrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("spectral abscissa of non-square matrix");
  if (m.isDiagonal(0.0)) {
    return m.diagonal().real().maxCoeff();
  }
  Eigen::ComplexEigenSolver<Matrix> es(m, false);
  if (es.info() != Eigen::Success) throw NumericError("eigensolver failed to converge");
  return es.eigenvalues().real().maxCoeff();
}

namespace {

void require_square(const Matrix& m, const char* name) {
  if (m.rows() != m.cols()) throw DimensionError(std::string(name) + " block must be square");
  if (!m.allFinite()) throw InvariantError(std::string(name) + " block has non-finite entries");
}

void require_stable(const Matrix& m, const char* name, bool allow_unstable) {
  if (allow_unstable) return;
  if (!(spectral_abscissa(m) < 0)) {
    throw InvariantError(std::string(name) +
                         " block has spectrum outside the open left half-plane "
                         "(pass allow_unstable to build it anyway)");
  }
}

}  // namespace

Matrix BlockSystem::dense() const {
  Matrix m = Matrix::Zero(dim(), dim());
  m.topLeftCorner(dim1(), dim1()) = a1_;
  m.bottomRightCorner(dim2(), dim2()) = a2_;
  m.topRightCorner(dim1(), dim2()) = c12_.dense();
  if (c21_) m.bottomLeftCorner(dim2(), dim1()) = c21_->dense();
  return m;
}

BlockSystem assemble_triangular(Matrix a1, Matrix a2, CouplingFactors coupling, Exponents exps,
                                bool allow_unstable) {
  require_square(a1, "a1");
  require_square(a2, "a2");
  coupling.validate();
  if (coupling.left.rows() != a1.rows() || coupling.right.cols() != a2.rows()) {
    throw DimensionError("coupling factors do not match the block dimensions");
  }
  require_stable(a1, "a1", allow_unstable);
  require_stable(a2, "a2", allow_unstable);

  BlockSystem sys;
  sys.kind_ = BlockKind::Triangular;
  sys.a1_ = std::move(a1);
  sys.a2_ = std::move(a2);
  sys.c12_ = std::move(coupling);
  sys.exps_ = std::move(exps);
  sys.allow_unstable_ = allow_unstable;
  return sys;
}

BlockSystem assemble_triangular(Matrix a1, Matrix a2, const OperatorMatrix& b,
                                const OperatorMatrix& c, Exponents exps, bool allow_unstable) {
  CouplingFactors f;
  f.left = b;
  f.right = c;
  return assemble_triangular(std::move(a1), std::move(a2), std::move(f), std::move(exps),
                             allow_unstable);
}

BlockSystem assemble_full(Matrix a1, Matrix a2, CouplingFactors c12, CouplingFactors c21,
                          Exponents exps, bool allow_unstable) {
  require_square(a1, "a1");
  require_square(a2, "a2");
  c12.validate();
  c21.validate();
  if (c12.left.rows() != a1.rows() || c12.right.cols() != a2.rows()) {
    throw DimensionError("coupling_12 factors do not match the block dimensions");
  }
  if (c21.left.rows() != a2.rows() || c21.right.cols() != a1.rows()) {
    throw DimensionError("coupling_21 factors do not match the block dimensions");
  }
  require_stable(a1, "a1", allow_unstable);
  require_stable(a2, "a2", allow_unstable);

  BlockSystem sys;
  sys.kind_ = BlockKind::Full;
  sys.a1_ = std::move(a1);
  sys.a2_ = std::move(a2);
  sys.c12_ = std::move(c12);
  sys.c21_ = std::move(c21);
  sys.exps_ = std::move(exps);
  sys.allow_unstable_ = allow_unstable;
  return sys;
}

BlockSystem assemble_full(Matrix a1, Matrix a2, const OperatorMatrix& b1, const OperatorMatrix& c1,
                          const OperatorMatrix& b2, const OperatorMatrix& c2, Exponents exps,
                          bool allow_unstable) {
  CouplingFactors f12;
  f12.left = b1;
  f12.right = c2;
  CouplingFactors f21;
  f21.left = b2;
  f21.right = c1;
  return assemble_full(std::move(a1), std::move(a2), std::move(f12), std::move(f21),
                       std::move(exps), allow_unstable);
}

BlockSystem similarity_swap(const BlockSystem& sys) {
  // P [[A1, C12],[C21, A2]] P = [[A2, C21],[C12, A1]].
  CouplingFactors new_c12 =
      sys.coupling_21() ? *sys.coupling_21() : CouplingFactors::zero(sys.dim2(), sys.dim1());
  CouplingFactors new_c21 = sys.coupling_12();

  Exponents e;
  e.alpha1 = sys.exponents().alpha2;
  e.alpha2 = sys.exponents().alpha1;
  if (sys.kind() == BlockKind::Triangular) {
    // The triangular pair (beta, gamma) describes coupling_12, which lands in
    // the 21 slot: its left factor is now smooth against the new a2, its right
    // factor against the new a1 adjoint.
    e.beta2 = sys.exponents().beta;
    e.gamma1 = sys.exponents().gamma;
  } else {
    e.beta1 = sys.exponents().beta2;
    e.gamma1 = sys.exponents().gamma2;
    e.beta2 = sys.exponents().beta1;
    e.gamma2 = sys.exponents().gamma1;
  }

  BlockSystem out;
  out.a1_ = sys.a2();
  out.a2_ = sys.a1();
  out.allow_unstable_ = sys.allow_unstable();

  if (new_c21.dim() == 0) {
    // Lower coupling vanished: canonical upper-triangular representation.
    out.kind_ = BlockKind::Triangular;
    out.c12_ = std::move(new_c12);
    out.c21_.reset();
    e.beta = e.beta1;
    e.gamma = e.gamma2;
    e.beta1.reset();
    e.gamma1.reset();
    e.beta2.reset();
    e.gamma2.reset();
  } else {
    out.kind_ = BlockKind::Full;
    out.c12_ = std::move(new_c12);
    out.c21_ = std::move(new_c21);
    e.beta.reset();
    e.gamma.reset();
  }
  out.exps_ = std::move(e);
  return out;
}

}  // namespace polystab
