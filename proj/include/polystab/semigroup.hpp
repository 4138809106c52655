#pragma once

#include <optional>
#include <vector>

#include "polystab/block.hpp"
#include "polystab/spectral.hpp"
#include "polystab/sweeps.hpp"
#include "polystab/types.hpp"

namespace polystab {

/// e^{m t}. Exactly diagonal matrices exponentiate entrywise; everything else
/// goes through scaling-and-squaring. Throws NumericError on overflow
/// (unstable m with large t) and InvariantError for t < 0.
Matrix matexp(const Matrix& m, double t);

/// ||e^{m t} P|| along a time grid, P = (-m)^{-beta}:
///   beta = 0            -> P = I,
///   gen supplied        -> P = diag((-lambda_k)^{-beta}), m must be diag(gen),
///   beta = 1, dense m   -> P = (-m)^{-1} through the system's own inverse.
/// General beta on a non-diagonal m is not defined here and throws.
/// Diagonal systems evaluate per mode in closed form; dense systems reuse a
/// single eigendecomposition when the eigenvector basis is well-conditioned
/// (condition number below 1e6) and fall back to matexp per point otherwise.
/// Data-parallel across the time grid.
SweepSamples decay_curve(const Matrix& m, const std::optional<DiagonalGenerator>& gen,
                         double beta, const std::vector<double>& ts);

/// S(t) = integral_0^t T1(t-s) (BC) T2(s) ds of a triangular system by
/// Gauss-Legendre quadrature, node count doubling from quad_points until two
/// consecutive levels agree to 1e-6 relative. Throws NumericError
/// ("quadrature not converged") when doubling exhausts the node budget.
/// Requires quad_points >= 8. Equals the top-right block of e^{At}.
Matrix convolution_block(const BlockSystem& sys, double t, int quad_points);

/// Gauss-Legendre nodes and weights on [-1, 1] (Newton on the Legendre
/// recurrence; cached per order).
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace polystab
