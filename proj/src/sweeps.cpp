#include "polystab/sweeps.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>
#include <cmath>
#include <limits>

#include "polystab/parallel.hpp"
#include "polystab/resolvent.hpp"

namespace polystab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_increasing_positive(const std::vector<double>& grid, const char* what) {
  if (grid.empty()) throw InvariantError(std::string(what) + " grid is empty");
  double prev = 0;
  for (double g : grid) {
    if (!(g > prev)) {
      throw InvariantError(std::string(what) + " grid must be strictly increasing and positive");
    }
    prev = g;
  }
}

SweepSamples make_samples(SweepAxis axis, const std::vector<double>& grid) {
  SweepSamples s;
  s.axis = axis;
  s.points.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) s.points[i].param = grid[i];
  s.window_lo = grid.front();
  s.window_hi = grid.back();
  return s;
}

}  // namespace

void SweepSamples::set_window(double lo, double hi) {
  window_lo = lo;
  window_hi = hi;
  validate();
}

void SweepSamples::validate() const {
  if (points.empty()) throw InvariantError("sweep has no samples");
  double prev = -kInf;
  for (const SweepPoint& p : points) {
    if (!(p.param > prev)) throw InvariantError("sweep parameters must be strictly increasing");
    prev = p.param;
  }
  if (!(window_lo <= window_hi) || window_lo < points.front().param ||
      window_hi > points.back().param) {
    throw InvariantError("fit window must lie inside the sampled range");
  }
  if (fit && fit->residual_rms < 0) throw InvariantError("negative fit residual");
}

std::size_t SweepSamples::finite_count_in_window() const {
  std::size_t n = 0;
  for (const SweepPoint& p : points) {
    if (p.finite && p.param >= window_lo && p.param <= window_hi) ++n;
  }
  return n;
}

SweepSamples resolvent_norm_sweep(const Matrix& m, const std::vector<double>& omegas) {
  if (m.rows() != m.cols()) throw DimensionError("resolvent sweep of non-square matrix");
  require_increasing_positive(omegas, "frequency");
  SweepSamples out = make_samples(SweepAxis::Frequency, omegas);
  const double norm_m = m.norm();

  parallel_for(static_cast<Index>(omegas.size()), [&](Index i) {
    const double w = omegas[static_cast<std::size_t>(i)];
    Matrix shifted = -m;
    shifted.diagonal().array() += Complex(0, w);
    double smin = smallest_singular_value(shifted);
    SweepPoint& p = out.points[static_cast<std::size_t>(i)];
    if (smin <= kSingularRelTol * (norm_m + w)) {
      p.value = kInf;
      p.finite = false;
    } else {
      p.value = 1.0 / smin;
    }
  });
  return out;
}

SweepSamples coupling_growth_product(const BlockSystem& sys, const std::vector<double>& omegas) {
  if (sys.kind() != BlockKind::Triangular) {
    throw InvariantError("coupling growth product needs a triangular system");
  }
  require_increasing_positive(omegas, "frequency");
  SweepSamples out = make_samples(SweepAxis::Frequency, omegas);
  const Matrix& b = sys.coupling_12().left.entries;
  const Matrix& c = sys.coupling_12().right.entries;
  const double scale1 = sys.a1().norm();
  const double scale2 = sys.a2().norm();

  parallel_for(static_cast<Index>(omegas.size()), [&](Index i) {
    const double w = omegas[static_cast<std::size_t>(i)];
    const Complex lambda(0, w);
    SweepPoint& p = out.points[static_cast<std::size_t>(i)];

    Matrix s1 = -sys.a1();
    s1.diagonal().array() += lambda;
    Matrix s2 = -sys.a2();
    s2.diagonal().array() += lambda;
    if (smallest_singular_value(s1) <= kSingularRelTol * (scale1 + w) ||
        smallest_singular_value(s2) <= kSingularRelTol * (scale2 + w)) {
      p.value = kInf;
      p.finite = false;
      return;
    }
    // ||R1 B|| via a thin solve, ||C R2|| via the adjoint solve of C^H.
    Matrix r1b = s1.partialPivLu().solve(b);
    Matrix cr2 = s2.adjoint().partialPivLu().solve(c.adjoint()).adjoint();
    p.value = operator_norm(r1b) * operator_norm(cr2);
  });
  return out;
}

namespace reference {

SweepSamples resolvent_norm_sweep(const Matrix& m, const std::vector<double>& omegas) {
  if (m.rows() != m.cols()) throw DimensionError("resolvent sweep of non-square matrix");
  require_increasing_positive(omegas, "frequency");
  SweepSamples out = make_samples(SweepAxis::Frequency, omegas);
  for (std::size_t i = 0; i < omegas.size(); ++i) {
    SweepPoint& p = out.points[i];
    try {
      Matrix r = resolvent_direct(m, Complex(0, omegas[i]));
      p.value = operator_norm(r);
    } catch (const SpectralPointError&) {
      p.value = std::numeric_limits<double>::infinity();
      p.finite = false;
    }
  }
  return out;
}

SweepSamples coupling_growth_product(const BlockSystem& sys, const std::vector<double>& omegas) {
  if (sys.kind() != BlockKind::Triangular) {
    throw InvariantError("coupling growth product needs a triangular system");
  }
  require_increasing_positive(omegas, "frequency");
  SweepSamples out = make_samples(SweepAxis::Frequency, omegas);
  for (std::size_t i = 0; i < omegas.size(); ++i) {
    SweepPoint& p = out.points[i];
    try {
      Matrix r1 = resolvent_direct(sys.a1(), Complex(0, omegas[i]));
      Matrix r2 = resolvent_direct(sys.a2(), Complex(0, omegas[i]));
      p.value = operator_norm(r1 * sys.coupling_12().left.entries) *
                operator_norm(sys.coupling_12().right.entries * r2);
    } catch (const SpectralPointError&) {
      p.value = std::numeric_limits<double>::infinity();
      p.finite = false;
    }
  }
  return out;
}

}  // namespace reference

}  // namespace polystab
