#pragma once

#include <optional>
#include <vector>

#include "polystab/block.hpp"
#include "polystab/spectral.hpp"
#include "polystab/types.hpp"

namespace polystab {

enum class SweepAxis { Frequency, Time };

struct SweepPoint {
  double param = 0;   // omega or t, strictly increasing across a sweep
  double value = 0;   // +inf on spectral samples
  bool finite = true; // false marks a spectral sample, excluded from fits
};

struct FitResult {
  double slope = 0;
  double intercept = 0;
  double residual_rms = 0;
};

/// Tagged (parameter, norm) samples from a frequency or time sweep, with the
/// window used for fitting and the fit outcome once computed.
struct SweepSamples {
  SweepAxis axis = SweepAxis::Frequency;
  std::vector<SweepPoint> points;
  double window_lo = 0;
  double window_hi = 0;
  std::optional<FitResult> fit;

  /// Restricts the fitting window; it must stay inside the sampled range.
  void set_window(double lo, double hi);

  /// Throws InvariantError unless parameters are strictly increasing and the
  /// window lies inside the sampled range.
  void validate() const;

  std::size_t finite_count_in_window() const;
};

/// ||R(i omega, m)|| = 1 / sigma_min(i omega I - m) per grid point, computed
/// by dense SVD. Samples where i omega is spectral to working precision are
/// marked infinite. Data-parallel across the grid.
SweepSamples resolvent_norm_sweep(const Matrix& m, const std::vector<double>& omegas);

/// ||R(i omega, A1) B|| * ||C R(i omega, A2)|| per grid point for a
/// triangular system's coupling factors. Data-parallel across the grid.
SweepSamples coupling_growth_product(const BlockSystem& sys, const std::vector<double>& omegas);

namespace reference {

/// Serial reference kernels. These deliberately take the plain route — form
/// the dense inverse, then take the norm of the product — so they cross-check
/// the production kernels' sigma_min shortcut and factored evaluation, and
/// serve as the baseline in the sweep benchmark.
SweepSamples resolvent_norm_sweep(const Matrix& m, const std::vector<double>& omegas);
SweepSamples coupling_growth_product(const BlockSystem& sys, const std::vector<double>& omegas);
SweepSamples decay_curve(const Matrix& m, double beta, const std::vector<double>& ts);

}  // namespace reference

}  // namespace polystab
