#pragma once

#include <utility>
#include <vector>

#include "polystab/types.hpp"

namespace polystab {

struct GomilkoOptions {
  bool adjoint = false;          // integrate ||R(xi+i eta, m)* v||^2 instead
  double tail_fraction = 0.01;   // stop widening once the added band is below this
  double refine_tol = 1e-6;      // relative Simpson refinement tolerance
  int max_range_doublings = 26;  // widening budget before "non-convergent tail"
};

struct GomilkoResult {
  double supremum = 0;  // max over the xi grid of xi * integral
  double arg_xi = 0;    // where the max was attained
  bool unbounded = false;  // spectrum touches the imaginary axis
  std::vector<std::pair<double, double>> per_xi;  // (xi, estimate)
};

/// Uniform-boundedness functional: for each xi > 0 evaluates
///   xi * integral ||R(xi + i eta, m) v||^2 d eta
/// over a symmetric eta-range, widened by doubling until the added tail is
/// below tail_fraction of the total, each range integrated by composite
/// Simpson with interval-halving to refine_tol. Returns the maximum over the
/// xi grid. A single Schur factorization of m serves every sample.
///
/// When the spectrum of m touches or crosses the imaginary axis the
/// functional has a non-integrable concentration and the result is reported
/// as unbounded instead. Throws NumericError("non-convergent tail") when the
/// widening budget runs out.
GomilkoResult gomilko_integral(const Matrix& m, const Vector& v, const std::vector<double>& xis,
                               const GomilkoOptions& opts = {});

}  // namespace polystab
