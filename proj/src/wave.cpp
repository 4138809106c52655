#include "polystab/wave.hpp"

#include <cmath>
#include <numbers>

namespace polystab {

namespace {
constexpr double kPi = std::numbers::pi;
}

void WaveSpec::validate() const {
  if (n_modes_2d < 1 || n_modes_1d < 1) throw InvariantError("wave spec needs mode counts >= 1");
  if (!(placement_exponent > Rational(0))) {
    throw InvariantError("placement exponent must be positive");
  }
  if (!(coupling_decay > Rational(0))) throw InvariantError("coupling decay must be positive");
  if (!(strip_lo >= 0) || !(strip_hi <= kPi) || !(strip_lo <= strip_hi)) {
    throw InvariantError("damping strip must lie inside [0, pi]");
  }
}

double damping_overlap_on(int m, int m_prime, double lo, double hi) {
  if (m < 1 || m_prime < 1) throw InvariantError("mode indices start at 1");
  auto antiderivative = [&](double z) {
    if (m == m_prime) {
      return z / 2.0 - std::sin(2.0 * m * z) / (4.0 * m);
    }
    const double d = m - m_prime, s = m + m_prime;
    return std::sin(d * z) / (2.0 * d) - std::sin(s * z) / (2.0 * s);
  };
  return antiderivative(hi) - antiderivative(lo);
}

double damping_overlap(int m, int m_prime) { return damping_overlap_on(m, m_prime, 0.0, 1.0); }

RealMatrix assemble_wave2d(const WaveSpec& spec) {
  spec.validate();
  const int n = spec.n_modes_2d;
  const Index nm = static_cast<Index>(n) * n;
  RealMatrix out = RealMatrix::Zero(2 * nm, 2 * nm);

  // One-dimensional strip overlaps, reused across the n-index.
  RealMatrix overlap(n, n);
  for (int m = 1; m <= n; ++m) {
    for (int mp = m; mp <= n; ++mp) {
      overlap(m - 1, mp - 1) = overlap(mp - 1, m - 1) =
          damping_overlap_on(m, mp, spec.strip_lo, spec.strip_hi);
    }
  }

  auto idx = [n](int m, int nn) { return static_cast<Index>(m - 1) * n + (nn - 1); };
  for (int m = 1; m <= n; ++m) {
    for (int nn = 1; nn <= n; ++nn) {
      const Index i = idx(m, nn);
      const double root_kappa = std::sqrt(static_cast<double>(m) * m + static_cast<double>(nn) * nn);
      out(i, nm + i) = root_kappa;    // da/dt = kappa^{1/2} b
      out(nm + i, i) = -root_kappa;   // db/dt = -kappa^{1/2} a - (D b)
      for (int mp = 1; mp <= n; ++mp) {
        out(nm + i, nm + idx(mp, nn)) -= (2.0 / kPi) * overlap(m - 1, mp - 1);
      }
    }
  }
  return out;
}

DiagonalGenerator assemble_wave1d_placed(const WaveSpec& spec) {
  spec.validate();
  const double p = spec.placement_exponent.value();
  std::vector<Complex> eigenvalues;
  std::vector<std::string> labels;
  eigenvalues.reserve(2 * static_cast<std::size_t>(spec.n_modes_1d));
  for (int k = 1; k <= spec.n_modes_1d; ++k) {
    const double re = -std::pow(static_cast<double>(k), -p);
    eigenvalues.emplace_back(re, k * kPi);
    labels.push_back("k=" + std::to_string(k));
    eigenvalues.emplace_back(re, -k * kPi);
    labels.push_back("k=-" + std::to_string(k));
  }
  return DiagonalGenerator(std::move(eigenvalues), std::move(labels),
                           spec.placement_exponent.value());
}

CouplingFactors assemble_wave_coupling(const WaveSpec& spec) {
  spec.validate();
  const int p = std::min(spec.n_modes_2d, spec.n_modes_1d);
  const Index nm = static_cast<Index>(spec.n_modes_2d) * spec.n_modes_2d;
  const double decay = spec.coupling_decay.value();

  Matrix b = Matrix::Zero(2 * nm, p);
  for (int k = 1; k <= p; ++k) {
    // Velocity channel of 2D mode (k, k); sin(k z1) sin(k z2) = (pi/2) phi_kk.
    const Index row = nm + static_cast<Index>(k - 1) * spec.n_modes_2d + (k - 1);
    b(row, k - 1) = (kPi / 2.0) * std::pow(static_cast<double>(k), -decay);
  }

  Matrix c = Matrix::Zero(p, 2 * static_cast<Index>(spec.n_modes_1d));
  for (int k = 1; k <= p; ++k) {
    const double w = 1.0 / (k * kPi);
    c(k - 1, 2 * (k - 1)) = w;      // mode +k
    c(k - 1, 2 * (k - 1) + 1) = w;  // mode -k
  }

  CouplingFactors f;
  f.left = OperatorMatrix{std::move(b), "wave2d-energy"};
  f.right = OperatorMatrix{std::move(c), "wave1d-modal"};
  f.coupling_dim_finite = false;  // models an infinite-dimensional Y at truncation
  return f;
}

BlockSystem build_coupled_wave(const WaveSpec& spec) {
  spec.validate();
  Matrix a1 = assemble_wave2d(spec).cast<Complex>();
  DiagonalGenerator gen = assemble_wave1d_placed(spec);

  Exponents e;
  e.alpha1 = DecayRate::polynomial(Rational(2));
  e.alpha2 = DecayRate::polynomial(spec.placement_exponent);
  e.beta = Rational(1);
  e.gamma = Rational(1);

  return assemble_triangular(std::move(a1), gen.matrix(), assemble_wave_coupling(spec),
                             std::move(e));
}

}  // namespace polystab
