#pragma once

#include <optional>

#include "polystab/rational.hpp"
#include "polystab/spectral.hpp"
#include "polystab/types.hpp"

namespace polystab {

/// Low-rank coupling stored in factored form left * right, because the
/// stability conditions are stated on the two factors separately (graph norms
/// of each side). The dense product is derived data. p = 0 is the canonical
/// zero coupling.
struct CouplingFactors {
  OperatorMatrix left;   // N x p, maps the coupling space into the state space
  OperatorMatrix right;  // p x M, reads the state space into the coupling space
  bool coupling_dim_finite = true;  // whether p models a finite-dimensional Y

  Index dim() const { return left.cols(); }
  Matrix dense() const { return left.entries * right.entries; }

  static CouplingFactors zero(Index rows, Index cols);

  void validate() const;
};

/// Declared stability of a subsystem: exponentially stable, or polynomially
/// stable with a rate alpha > 0. Exponential stability is a tag rather than
/// alpha = 0 so that divisions by alpha stay well-defined; the condition
/// logic special-cases the tag.
class DecayRate {
 public:
  static DecayRate exponential() { return DecayRate(true, Rational(0)); }
  static DecayRate polynomial(Rational alpha);

  bool is_exponential() const { return exponential_; }
  /// The polynomial rate; 0 for the exponential tag (the limit case).
  const Rational& alpha() const { return alpha_; }

  bool operator==(const DecayRate& o) const {
    return exponential_ == o.exponential_ && alpha_ == o.alpha_;
  }

 private:
  DecayRate(bool e, Rational a) : exponential_(e), alpha_(a) {}
  bool exponential_;
  Rational alpha_;
};

/// Declared analysis inputs carried with a system: subsystem rates plus the
/// smoothness exponents of the coupling factors. The triangular pair
/// (beta, gamma) belongs to coupling_12; the indexed quadruple belongs to the
/// full-matrix couplings.
struct Exponents {
  DecayRate alpha1 = DecayRate::polynomial(Rational(1));
  DecayRate alpha2 = DecayRate::polynomial(Rational(1));
  std::optional<Rational> beta, gamma;
  std::optional<Rational> beta1, gamma1, beta2, gamma2;
};

enum class BlockKind { Triangular, Full };

/// Truncated 2x2 block system [[a1, c12], [c21, a2]] with low-rank couplings.
/// Triangular systems have no coupling_21. On construction both diagonal
/// blocks must have spectrum in the open left half-plane unless
/// allow_unstable is set (instability demonstrations deliberately place
/// eigenvalues on the axis).
class BlockSystem {
 public:
  BlockKind kind() const { return kind_; }
  const Matrix& a1() const { return a1_; }
  const Matrix& a2() const { return a2_; }
  const CouplingFactors& coupling_12() const { return c12_; }
  const std::optional<CouplingFactors>& coupling_21() const { return c21_; }
  const Exponents& exponents() const { return exps_; }
  Exponents& exponents() { return exps_; }
  bool allow_unstable() const { return allow_unstable_; }

  Index dim1() const { return a1_.rows(); }
  Index dim2() const { return a2_.rows(); }
  Index dim() const { return dim1() + dim2(); }

  /// The assembled dense (N1+N2) x (N1+N2) matrix.
  Matrix dense() const;

  friend BlockSystem assemble_triangular(Matrix a1, Matrix a2, CouplingFactors coupling,
                                         Exponents exps, bool allow_unstable);
  friend BlockSystem assemble_full(Matrix a1, Matrix a2, CouplingFactors c12,
                                   CouplingFactors c21, Exponents exps, bool allow_unstable);
  friend BlockSystem similarity_swap(const BlockSystem& sys);

 private:
  BlockSystem() = default;

  BlockKind kind_ = BlockKind::Triangular;
  Matrix a1_, a2_;
  CouplingFactors c12_;
  std::optional<CouplingFactors> c21_;
  Exponents exps_;
  bool allow_unstable_ = false;
};

/// Builds [[a1, b*c], [0, a2]]. Throws DimensionError on mismatched factor
/// shapes and InvariantError when a diagonal block is not strictly stable
/// (unless allow_unstable).
BlockSystem assemble_triangular(Matrix a1, Matrix a2, CouplingFactors coupling,
                                Exponents exps = {}, bool allow_unstable = false);
BlockSystem assemble_triangular(Matrix a1, Matrix a2, const OperatorMatrix& b,
                                const OperatorMatrix& c, Exponents exps = {},
                                bool allow_unstable = false);

/// Builds [[a1, b1*c2], [b2*c1, a2]].
BlockSystem assemble_full(Matrix a1, Matrix a2, CouplingFactors c12, CouplingFactors c21,
                          Exponents exps = {}, bool allow_unstable = false);
BlockSystem assemble_full(Matrix a1, Matrix a2, const OperatorMatrix& b1,
                          const OperatorMatrix& c1, const OperatorMatrix& b2,
                          const OperatorMatrix& c2, Exponents exps = {},
                          bool allow_unstable = false);

/// Exchanges the two subsystems: the result's dense matrix is exactly
/// P * dense * P with P = [[0, I], [I, 0]], so spectra are identical.
/// Swapping a triangular system yields its lower-triangular counterpart,
/// represented as a full system with zero upper coupling; a second swap
/// recovers the original triangular representation exactly. Declared
/// exponents are renamed along with the subsystems.
BlockSystem similarity_swap(const BlockSystem& sys);

/// Largest real part over the spectrum (dense eigensolve; diagonal fast path).
double spectral_abscissa(const Matrix& m);

}  // namespace polystab
