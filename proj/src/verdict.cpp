#include "polystab/verdict.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>

#include "polystab/parallel.hpp"
#include "polystab/resolvent.hpp"
#include "polystab/spectral.hpp"

namespace polystab {

std::string theorem_name(Theorem t) {
  switch (t) {
    case Theorem::Thm3_1: return "Thm3.1";
    case Theorem::Thm3_3: return "Thm3.3";
    case Theorem::Thm3_4_i: return "Thm3.4(i)";
    case Theorem::Thm3_4_ii: return "Thm3.4(ii)";
    case Theorem::Thm3_4_iii: return "Thm3.4(iii)";
    case Theorem::Thm3_4_iv: return "Thm3.4(iv)";
    case Theorem::Thm3_5: return "Thm3.5";
    case Theorem::Cor3_6: return "Cor3.6";
  }
  return "?";
}

void StabilityVerdict::validate() const {
  if (applicable.has_value() != predicted_alpha.has_value()) {
    throw InvariantError("predicted_alpha must be present exactly when a theorem applies");
  }
  if (applicable) {
    for (const auto& [name, margin] : condition_margins) {
      if (margin < Rational(0)) {
        throw InvariantError("applicable verdict carries a negative margin: " + name);
      }
    }
  }
}

namespace {

void require_nonnegative(const Rational& r, const char* name) {
  if (r < Rational(0)) throw InvariantError(std::string(name) + " must be >= 0");
}

Rational predicted_max(const DecayRate& a1, const DecayRate& a2) {
  // Exponential counts as the alpha = 0 limit case.
  return max(a1.alpha(), a2.alpha());
}

}  // namespace

StabilityVerdict check_triangular(const DecayRate& alpha1, const DecayRate& alpha2,
                                  const Rational& beta, const Rational& gamma, bool y_finite) {
  require_nonnegative(beta, "beta");
  require_nonnegative(gamma, "gamma");

  StabilityVerdict v;
  if (alpha1.is_exponential() || alpha2.is_exponential()) {
    // No condition on the coupling exponents at all.
    v.applicable = Theorem::Thm3_3;
    v.predicted_alpha = alpha1.is_exponential() ? alpha2.alpha() : alpha1.alpha();
    v.notes = alpha1.is_exponential() && alpha2.is_exponential()
                  ? "both subsystems exponentially stable (limit case alpha = 0)"
                  : "one subsystem exponentially stable; coupling exponents not needed";
    return v;
  }

  const Rational margin = beta / alpha1.alpha() + gamma / alpha2.alpha() - Rational(1);
  v.condition_margins.emplace_back("beta/alpha1+gamma/alpha2-1", margin);
  if (margin > Rational(0) || (margin == Rational(0) && y_finite)) {
    v.applicable = Theorem::Thm3_1;
    v.predicted_alpha = predicted_max(alpha1, alpha2);
    if (margin == Rational(0)) v.notes = "finite-dimensional coupling space branch (>= 1)";
  } else if (margin == Rational(0)) {
    v.notes = "exponent sum exactly 1 needs a finite-dimensional coupling space";
  } else {
    v.notes = "exponent condition violated: beta/alpha1 + gamma/alpha2 < 1";
  }
  return v;
}

namespace {

struct Branch {
  Theorem label;
  bool holds;
  std::vector<std::pair<std::string, Rational>> margins;
};

Branch try_branch(Theorem label, std::vector<std::pair<std::string, Rational>> margins) {
  Branch b{label, true, std::move(margins)};
  for (const auto& [name, m] : b.margins) {
    if (m < Rational(0)) b.holds = false;
  }
  return b;
}

void apply_delta(StabilityVerdict& v, Theorem label, const Rational& alpha,
                 std::vector<std::pair<std::string, Rational>> margins, const GraphNorms& norms,
                 const std::optional<DeltaEstimate>& delta) {
  v.graph_norm_product = norms.product();
  v.delta_estimate = delta;
  if (!delta) {
    v.applicable = label;
    v.predicted_alpha = alpha;
    v.condition_margins = std::move(margins);
    v.conditional_on_delta = true;
    v.notes = "exponent conditions hold; smallness of the norm product is conditional on delta";
    return;
  }
  if (norms.product() < delta->value) {
    v.applicable = label;
    v.predicted_alpha = alpha;
    v.condition_margins = std::move(margins);
    v.notes = "norm product below the supplied delta (" + delta->method + ")";
  } else {
    v.condition_margins = std::move(margins);
    v.notes = "exponent conditions hold but the norm product is not below delta";
  }
}

}  // namespace

StabilityVerdict check_full(const FullExponents& exps, bool y1_finite, bool y2_finite,
                            const GraphNorms& norms, const std::optional<DeltaEstimate>& delta) {
  require_nonnegative(exps.beta1, "beta1");
  require_nonnegative(exps.gamma1, "gamma1");
  require_nonnegative(exps.beta2, "beta2");
  require_nonnegative(exps.gamma2, "gamma2");

  const bool exp1 = exps.alpha1.is_exponential();
  const bool exp2 = exps.alpha2.is_exponential();
  StabilityVerdict v;

  if (exp1) {
    // Exponential first subsystem: no conditions on beta1/gamma1. The second
    // subsystem needs beta2, gamma2 >= alpha2, relaxed to beta2+gamma2 >= alpha2
    // for a finite-dimensional Y2. Both exponential degenerates to alpha = 0.
    const Rational a2 = exps.alpha2.alpha();
    Branch base = try_branch(Theorem::Thm3_5, {{"beta2-alpha2", exps.beta2 - a2},
                                               {"gamma2-alpha2", exps.gamma2 - a2}});
    Branch relaxed =
        try_branch(Theorem::Thm3_5, {{"beta2+gamma2-alpha2", exps.beta2 + exps.gamma2 - a2}});
    if (exp2 || base.holds) {
      apply_delta(v, Theorem::Thm3_5, a2, exp2 ? decltype(base.margins){} : base.margins, norms,
                  delta);
      if (exp2) v.notes += (v.notes.empty() ? "" : "; ") + std::string("both subsystems exponential");
    } else if (y2_finite && relaxed.holds) {
      apply_delta(v, Theorem::Thm3_5, a2, relaxed.margins, norms, delta);
      v.notes += "; finite-dimensional Y2 branch (beta2+gamma2 >= alpha2)";
    } else {
      v.condition_margins = y2_finite ? relaxed.margins : base.margins;
      v.graph_norm_product = norms.product();
      v.notes = y2_finite ? "condition failed: beta2+gamma2 < alpha2"
                          : "condition failed: beta2, gamma2 >= alpha2 required";
    }
    return v;
  }

  if (exp2) {
    const Rational a1 = exps.alpha1.alpha();
    Branch base = try_branch(Theorem::Cor3_6, {{"beta1-alpha1", exps.beta1 - a1},
                                               {"gamma1-alpha1", exps.gamma1 - a1}});
    Branch relaxed =
        try_branch(Theorem::Cor3_6, {{"beta1+gamma1-alpha1", exps.beta1 + exps.gamma1 - a1}});
    if (base.holds) {
      apply_delta(v, Theorem::Cor3_6, a1, base.margins, norms, delta);
    } else if (y1_finite && relaxed.holds) {
      apply_delta(v, Theorem::Cor3_6, a1, relaxed.margins, norms, delta);
      v.notes += "; finite-dimensional Y1 branch (beta1+gamma1 >= alpha1)";
    } else {
      v.condition_margins = y1_finite ? relaxed.margins : base.margins;
      v.graph_norm_product = norms.product();
      v.notes = y1_finite ? "condition failed: beta1+gamma1 < alpha1"
                          : "condition failed: beta1, gamma1 >= alpha1 required";
    }
    return v;
  }

  const Rational a1 = exps.alpha1.alpha();
  const Rational a2 = exps.alpha2.alpha();
  const Rational alpha = max(a1, a2);

  std::vector<Branch> branches;
  branches.push_back(try_branch(Theorem::Thm3_4_i, {{"beta1-alpha1", exps.beta1 - a1},
                                                    {"gamma1-alpha1", exps.gamma1 - a1},
                                                    {"beta2-alpha2", exps.beta2 - a2},
                                                    {"gamma2-alpha2", exps.gamma2 - a2}}));
  if (y1_finite) {
    branches.push_back(
        try_branch(Theorem::Thm3_4_ii, {{"beta1+gamma1-alpha1", exps.beta1 + exps.gamma1 - a1},
                                        {"beta2-alpha2", exps.beta2 - a2},
                                        {"gamma2-alpha2", exps.gamma2 - a2}}));
  }
  if (y2_finite) {
    branches.push_back(
        try_branch(Theorem::Thm3_4_iii, {{"beta1-alpha1", exps.beta1 - a1},
                                         {"gamma1-alpha1", exps.gamma1 - a1},
                                         {"beta2+gamma2-alpha2", exps.beta2 + exps.gamma2 - a2}}));
  }
  if (y1_finite && y2_finite) {
    branches.push_back(
        try_branch(Theorem::Thm3_4_iv,
                   {{"beta1/alpha1+gamma1/alpha1-1", exps.beta1 / a1 + exps.gamma1 / a1 - Rational(1)},
                    {"beta1/alpha1+gamma2/alpha2-1", exps.beta1 / a1 + exps.gamma2 / a2 - Rational(1)},
                    {"beta2/alpha2+gamma1/alpha1-1", exps.beta2 / a2 + exps.gamma1 / a1 - Rational(1)},
                    {"beta2/alpha2+gamma2/alpha2-1", exps.beta2 / a2 + exps.gamma2 / a2 - Rational(1)}}));
  }

  for (const Branch& b : branches) {
    if (b.holds) {
      apply_delta(v, b.label, alpha, b.margins, norms, delta);
      return v;
    }
  }

  // Nothing applies: report the most permissive branch's margins for diagnosis.
  v.condition_margins = branches.back().margins;
  v.graph_norm_product = norms.product();
  v.notes = "no exponent branch of the full-matrix conditions holds";
  return v;
}

DeltaCertificate dlambda_margin(const BlockSystem& sys, const std::vector<Complex>& lambda_grid) {
  if (sys.kind() != BlockKind::Full) {
    throw InvariantError("dlambda_margin needs a full system");
  }
  if (lambda_grid.empty()) throw InvariantError("lambda grid is empty");
  if (!sys.allow_unstable()) {
    // Diagonal blocks validated stable at construction; nothing more needed.
  } else if (!(spectral_abscissa(sys.a1()) < 0) || !(spectral_abscissa(sys.a2()) < 0)) {
    throw InvariantError("dlambda_margin requires both diagonal blocks stable");
  }

  const Matrix& b1 = sys.coupling_12().left.entries;
  const Matrix& c2 = sys.coupling_12().right.entries;
  const Matrix& b2 = sys.coupling_21()->left.entries;
  const Matrix& c1 = sys.coupling_21()->right.entries;
  const Index p1 = b1.cols();

  struct Sample {
    double loop_norm = 0;
    double dmin = 1;
  };
  std::vector<Sample> samples(lambda_grid.size());

  parallel_for(static_cast<Index>(lambda_grid.size()), [&](Index i) {
    const Complex lambda = lambda_grid[static_cast<std::size_t>(i)];
    Matrix r1 = resolvent_direct(sys.a1(), lambda);
    Matrix r2 = resolvent_direct(sys.a2(), lambda);
    Matrix loop21 = (c1 * r1) * b1;  // p2 x p1
    Matrix loop12 = (c2 * r2) * b2;  // p1 x p2
    Sample& s = samples[static_cast<std::size_t>(i)];
    s.loop_norm = operator_norm(loop21 * loop12);  // C1 R1 B1 C2 R2 B2 on Y2
    if (p1 == 0) {
      s.dmin = 1.0;
    } else {
      Matrix d = Matrix::Identity(p1, p1) - loop12 * loop21;
      s.dmin = smallest_singular_value(d);
    }
  });

  DeltaCertificate cert;
  cert.loop_norm_max = -1;
  cert.dmin_singular = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (samples[i].loop_norm > cert.loop_norm_max) {
      cert.loop_norm_max = samples[i].loop_norm;
      cert.arg_loop_max = lambda_grid[i];
    }
    if (samples[i].dmin < cert.dmin_singular) {
      cert.dmin_singular = samples[i].dmin;
      cert.arg_dmin = lambda_grid[i];
    }
  }

  const double product = operator_norm(b1) * operator_norm(c1) * operator_norm(b2) *
                         operator_norm(c2);
  cert.delta_value = cert.loop_norm_max > 0 ? product / cert.loop_norm_max
                                            : std::numeric_limits<double>::infinity();
  return cert;
}

std::vector<Complex> default_certificate_grid(double omega_max, std::size_t points_per_ray) {
  if (!(omega_max > 0) || points_per_ray < 2) {
    throw InvariantError("certificate grid needs omega_max > 0 and at least 2 points per ray");
  }
  std::vector<Complex> grid;
  const double step = omega_max / static_cast<double>(points_per_ray - 1);
  for (double re : {0.0, 0.1, 1.0, 10.0}) {
    for (std::size_t i = 0; i < points_per_ray; ++i) {
      const double w = step * static_cast<double>(i);
      grid.emplace_back(re, w);
      if (w > 0) grid.emplace_back(re, -w);
    }
  }
  return grid;
}

SpectralReport spectral_check(const Matrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("spectral check of non-square matrix");
  Eigen::ComplexEigenSolver<Matrix> es(m, false);
  if (es.info() != Eigen::Success) throw NumericError("eigensolver failed to converge");
  SpectralReport report;
  report.eigenvalues.assign(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  report.abscissa = -std::numeric_limits<double>::infinity();
  report.axis_distance = std::numeric_limits<double>::infinity();
  for (const Complex& ev : report.eigenvalues) {
    report.abscissa = std::max(report.abscissa, ev.real());
    report.axis_distance = std::min(report.axis_distance, std::abs(ev.real()));
  }
  report.imaginary_axis_eigenvalue = report.axis_distance < 1e-9;
  return report;
}

}  // namespace polystab
