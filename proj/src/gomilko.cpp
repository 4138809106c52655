#include "polystab/gomilko.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>

#include "polystab/parallel.hpp"

namespace polystab {

namespace {

// ||R(xi + i eta, m) v||^2 evaluated on the Schur form: one triangular solve
// per sample instead of a dense factorization.
struct ResolventDensity {
  const Matrix& t;   // upper triangular Schur factor
  const Vector& qv;  // Q^* v
  double xi = 0;
  bool adjoint = false;

  double operator()(double eta) const {
    Matrix b = -t;
    b.diagonal().array() += Complex(xi, eta);
    Vector x;
    if (adjoint) {
      x = b.triangularView<Eigen::Upper>().adjoint().solve(qv);
    } else {
      x = b.triangularView<Eigen::Upper>().solve(qv);
    }
    return x.squaredNorm();
  }
};

double simpson(double fa, double fm, double fb, double h) { return h / 6.0 * (fa + 4.0 * fm + fb); }

template <class F>
double adaptive_step(const F& f, double a, double b, double fa, double fm, double fb,
                     double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson(fa, flm, fm, m - a);
  const double right = simpson(fm, frm, fb, b - m);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adaptive_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

// Adaptive Simpson over [a, b], pre-split at the known resonance ordinates so
// narrow spectral spikes cannot slip between the initial samples.
template <class F>
double integrate_panelled(const F& f, double a, double b, const std::vector<double>& splits,
                          double tol_per_unit) {
  std::vector<double> edges{a, b};
  for (double s : splits) {
    if (s > a && s < b) edges.push_back(s);
  }
  std::sort(edges.begin(), edges.end());
  double total = 0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const double lo = edges[i], hi = edges[i + 1];
    if (!(hi > lo)) continue;
    const double mid = 0.5 * (lo + hi);
    const double flo = f(lo), fmid = f(mid), fhi = f(hi);
    const double whole = simpson(flo, fmid, fhi, hi - lo);
    total += adaptive_step(f, lo, hi, flo, fmid, fhi, whole, tol_per_unit * (hi - lo), 48);
  }
  return total;
}

}  // namespace

GomilkoResult gomilko_integral(const Matrix& m, const Vector& v, const std::vector<double>& xis,
                               const GomilkoOptions& opts) {
  if (m.rows() != m.cols()) throw DimensionError("gomilko integral of non-square matrix");
  if (v.size() != m.rows()) throw DimensionError("vector length must match the matrix");
  if (xis.empty()) throw InvariantError("xi grid is empty");
  double prev = 0;
  for (double xi : xis) {
    if (!(xi > prev)) throw InvariantError("xi grid must be strictly increasing and positive");
    prev = xi;
  }

  Eigen::ComplexEigenSolver<Matrix> es(m, false);
  if (es.info() != Eigen::Success) throw NumericError("eigensolver failed to converge");
  const double abscissa = es.eigenvalues().real().maxCoeff();

  GomilkoResult result;
  if (abscissa > -1e-12) {
    // A spectral point on (or right of) the axis makes the functional blow up
    // under refinement; report unbounded rather than a truncation-dependent number.
    result.unbounded = true;
    result.supremum = std::numeric_limits<double>::infinity();
    return result;
  }

  std::vector<double> resonances;
  double im_extent = 0;
  for (Index k = 0; k < es.eigenvalues().size(); ++k) {
    const double im = es.eigenvalues()(k).imag();
    resonances.push_back(im);
    resonances.push_back(-im);
    im_extent = std::max(im_extent, std::abs(im));
  }
  std::sort(resonances.begin(), resonances.end());

  Eigen::ComplexSchur<Matrix> schur(m, true);
  if (schur.info() != Eigen::Success) throw NumericError("schur factorization failed");
  const Matrix t = schur.matrixT();
  const Vector qv = schur.matrixU().adjoint() * v;

  result.per_xi.resize(xis.size());
  parallel_for(static_cast<Index>(xis.size()), [&](Index i) {
    const double xi = xis[static_cast<std::size_t>(i)];
    ResolventDensity f{t, qv, xi, opts.adjoint};

    double range = 2.0 * (im_extent + xi + 1.0);
    const double scale_tol = opts.refine_tol * std::max(f(0.0), 1e-300);
    double total = integrate_panelled(f, -range, range, resonances, scale_tol);
    bool converged = false;
    for (int d = 0; d < opts.max_range_doublings; ++d) {
      const double band = integrate_panelled(f, range, 2.0 * range, resonances, scale_tol) +
                          integrate_panelled(f, -2.0 * range, -range, resonances, scale_tol);
      total += band;
      range *= 2.0;
      if (band <= opts.tail_fraction * total) {
        converged = true;
        break;
      }
    }
    if (!converged) throw NumericError("non-convergent tail");
    result.per_xi[static_cast<std::size_t>(i)] = {xi, xi * total};
  });

  result.supremum = -1;
  for (const auto& [xi, est] : result.per_xi) {
    if (est > result.supremum) {
      result.supremum = est;
      result.arg_xi = xi;
    }
  }
  return result;
}

}  // namespace polystab
