#pragma once

#include "polystab/block.hpp"
#include "polystab/rational.hpp"
#include "polystab/spectral.hpp"
#include "polystab/types.hpp"

namespace polystab {

/// Parameters of the coupled wave discretization: a 2D wave equation on
/// (0,pi)^2 with viscous damping on a vertical strip, coupled one-way to a 1D
/// wave whose closed-loop spectrum is placed at -1/|k|^p + i k pi.
struct WaveSpec {
  int n_modes_2d = 8;   // modes per direction; 2D state dimension 2 n^2
  int n_modes_1d = 64;  // 1 <= |k| <= n; 1D state dimension 2 n
  Rational placement_exponent{5, 3};
  Rational coupling_decay{2};  // 1/k^2 weights of the coupling columns
  double strip_lo = 0.0;       // damping strip inside [0, pi]
  double strip_hi = 1.0;

  void validate() const;
};

/// integral_0^1 sin(m z) sin(m' z) dz in closed form.
double damping_overlap(int m, int m_prime);

/// Same integral over [lo, hi]; the strip-damping matrix entries come from
/// this with the spec's strip.
double damping_overlap_on(int m, int m_prime, double lo, double hi);

/// Spectral Galerkin truncation of [[0, I], [Laplacian, -a(z)]] in energy
/// coordinates: per mode (m, n) the position coefficient is taken against the
/// gradient-normalized basis and the velocity coefficient against the
/// L2-normalized basis, so the Euclidean norm of the coordinate vector equals
/// the energy norm. Ordering: position block then velocity block, modes
/// flattened as (m-1)*N + (n-1).
RealMatrix assemble_wave2d(const WaveSpec& spec);

/// Diagonal model of the pole-placed 1D wave: eigenvalues
/// mu_k = -1/|k|^p + i k pi for 1 <= |k| <= N, ordered +1, -1, +2, -2, ...
/// The set is conjugate-symmetric.
DiagonalGenerator assemble_wave1d_placed(const WaveSpec& spec);

/// Fourier coupling factors for the triangular system [[A1, BC], [0, A2]]:
/// column k of the B factor drives the velocity of 2D mode (k, k) with weight
/// (pi/2) k^{-decay}; row k of the C factor reads the 1D position channel of
/// modes +-k with weight 1/(k pi). p = min(n_modes_2d, n_modes_1d).
CouplingFactors assemble_wave_coupling(const WaveSpec& spec);

/// Wires the three assemblies into one triangular system with declared
/// exponents alpha1 = 2, alpha2 = placement_exponent, beta = gamma = 1.
BlockSystem build_coupled_wave(const WaveSpec& spec);

}  // namespace polystab
