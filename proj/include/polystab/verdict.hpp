#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "polystab/block.hpp"
#include "polystab/rational.hpp"
#include "polystab/types.hpp"

namespace polystab {

enum class Theorem {
  Thm3_1,    // triangular, both polynomial
  Thm3_3,    // triangular, one subsystem exponential
  Thm3_4_i,  // full, both polynomial, branches (i)-(iv)
  Thm3_4_ii,
  Thm3_4_iii,
  Thm3_4_iv,
  Thm3_5,   // full, first subsystem exponential
  Cor3_6,   // full, second subsystem exponential
};

std::string theorem_name(Theorem t);

struct DeltaEstimate {
  double value = 0;
  std::string method;  // "sampled" for the finite-grid certificate
};

/// Outcome of hypothesis checking. predicted_alpha is present exactly when a
/// theorem applies; margins attached to an applicable verdict are all >= 0.
/// Margins are exact rationals of the declared exponents.
struct StabilityVerdict {
  std::optional<Theorem> applicable;
  std::optional<Rational> predicted_alpha;
  std::vector<std::pair<std::string, Rational>> condition_margins;
  std::optional<double> graph_norm_product;
  std::optional<DeltaEstimate> delta_estimate;
  bool conditional_on_delta = false;  // branch holds but no delta was supplied
  std::string notes;

  void validate() const;
};

/// Triangular hypotheses. An exponential tag on either subsystem removes the
/// beta/gamma conditions entirely and predicts the other subsystem's rate;
/// otherwise beta/alpha1 + gamma/alpha2 must exceed 1, with equality enough
/// when the coupling space is finite-dimensional.
StabilityVerdict check_triangular(const DecayRate& alpha1, const DecayRate& alpha2,
                                  const Rational& beta, const Rational& gamma, bool y_finite);

struct FullExponents {
  DecayRate alpha1 = DecayRate::polynomial(Rational(1));
  DecayRate alpha2 = DecayRate::polynomial(Rational(1));
  Rational beta1{0}, gamma1{0}, beta2{0}, gamma2{0};
};

/// The four graph norms entering the smallness condition, in the order
/// ||(-A1)^{b1} B1||, ||(-A1*)^{g1} C1*||, ||(-A2)^{b2} B2||, ||(-A2*)^{g2} C2*||.
/// When a subsystem is exponentially stable its two entries are the plain
/// operator norms.
struct GraphNorms {
  double b1 = 0, c1 = 0, b2 = 0, c2 = 0;
  double product() const { return b1 * c1 * b2 * c2; }
};

/// Full-matrix hypotheses: picks the first applicable exponent branch
/// ((i)-(iv), or the exponential variants with their finite-Y relaxations),
/// then applies the smallness test product < delta when a delta estimate is
/// supplied. Without one the verdict is conditional on delta and reports the
/// product.
StabilityVerdict check_full(const FullExponents& exps, bool y1_finite, bool y2_finite,
                            const GraphNorms& norms,
                            const std::optional<DeltaEstimate>& delta = std::nullopt);

/// Finite-grid certificate for the loop-operator smallness condition: the
/// largest sampled norm of C1 R(lambda,A1) B1 * C2 R(lambda,A2) B2 and the
/// smallest sampled singular value of D_lambda. delta_value is the coupling
/// product at which the sampled loop maximum would reach one under uniform
/// rescaling of the four factors (infinite for zero coupling). A heuristic
/// proxy for the supremum over the closed right half-plane, never a proof;
/// method is always "sampled".
struct DeltaCertificate {
  double loop_norm_max = 0;
  Complex arg_loop_max;
  double dmin_singular = 0;
  Complex arg_dmin;
  double delta_value = 0;
  std::string method = "sampled";
};

DeltaCertificate dlambda_margin(const BlockSystem& sys, const std::vector<Complex>& lambda_grid);

/// Builds a default certificate grid: the imaginary axis i*[0, omega_max]
/// plus right-half-plane rays at a few positive real parts.
std::vector<Complex> default_certificate_grid(double omega_max, std::size_t points_per_ray);

struct SpectralReport {
  std::vector<Complex> eigenvalues;
  double abscissa = 0;
  double axis_distance = 0;  // min |Re lambda|
  bool imaginary_axis_eigenvalue = false;  // axis_distance < 1e-9
};

SpectralReport spectral_check(const Matrix& m);

}  // namespace polystab
