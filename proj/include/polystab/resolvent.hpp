#pragma once

#include "polystab/block.hpp"
#include "polystab/types.hpp"

namespace polystab {

/// A point lambda counts as spectral for m when
/// sigma_min(lambda I - m) <= kSingularRelTol * (||m||_F + |lambda|).
inline constexpr double kSingularRelTol = 1e-12;

/// D_lambda is reported singular when its smallest singular value drops
/// below this threshold (D_lambda = I - loop is O(1) by construction).
inline constexpr double kLoopSingularTol = 1e-10;

double smallest_singular_value(const Matrix& m);

/// (lambda I - m)^{-1} by LU after an explicit singularity check.
/// Throws SpectralPointError when lambda is spectral to working precision.
Matrix resolvent_direct(const Matrix& m, Complex lambda);

/// Structured resolvent [[R1, R1 (BC) R2], [0, R2]] of a triangular system.
Matrix resolvent_triangular(const BlockSystem& sys, Complex lambda);

/// Structured resolvent of a full system via the Schur complement of
/// (lambda - a1): inverts the loop operator D_lambda on the coupling space
/// and assembles the four blocks. Throws LoopSingularError when D_lambda is
/// singular to working precision (lambda may then lie in the spectrum of the
/// assembled matrix even though both diagonal blocks are resolvent points).
Matrix resolvent_full_schur(const BlockSystem& sys, Complex lambda);

}  // namespace polystab
