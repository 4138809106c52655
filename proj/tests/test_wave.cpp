#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "polystab/semigroup.hpp"
#include "polystab/spectral.hpp"
#include "polystab/verdict.hpp"
#include "polystab/wave.hpp"
#include "test_support.hpp"

using namespace polystab;
using namespace polystab::testing;

namespace {

constexpr double kPi = std::numbers::pi;

// Composite Gauss-Legendre quadrature oracle for the strip overlaps, panel
// count scaled to the integrand frequency.
double overlap_quadrature(int m, int mp, double lo, double hi) {
  std::vector<double> nodes, weights;
  gauss_legendre(32, nodes, weights);
  const int panels = 2 + (m + mp) / 20;
  const double h = (hi - lo) / panels;
  double total = 0;
  for (int p = 0; p < panels; ++p) {
    const double a = lo + p * h;
    for (std::size_t q = 0; q < nodes.size(); ++q) {
      const double z = a + 0.5 * h * (nodes[q] + 1.0);
      total += 0.5 * h * weights[q] * std::sin(m * z) * std::sin(mp * z);
    }
  }
  return total;
}

}  // namespace

TEST_SUITE_BEGIN("wave");

TEST_CASE("documented overlap values") {
  CHECK(damping_overlap(1, 1) == doctest::Approx(0.5 - std::sin(2.0) / 4.0).epsilon(1e-15));
  CHECK(damping_overlap(1, 1) == doctest::Approx(0.27268).epsilon(1e-4));
  CHECK(damping_overlap(1, 2) ==
        doctest::Approx(std::sin(1.0) / 2.0 - std::sin(3.0) / 6.0).epsilon(1e-15));
  CHECK(damping_overlap(1, 2) == doctest::Approx(0.39720).epsilon(1e-4));
  CHECK(damping_overlap(2, 2) == doctest::Approx(0.5 - std::sin(4.0) / 8.0).epsilon(1e-15));
  CHECK(damping_overlap(2, 2) == doctest::Approx(0.59460).epsilon(1e-4));
}

TEST_CASE("overlaps agree with quadrature, are symmetric, and stay in [0, 1]") {
  for (int m = 1; m <= 200; ++m) {
    for (int mp = m; mp <= 200; mp += (mp < 12 ? 1 : 17)) {
      const double closed = damping_overlap(m, mp);
      CHECK(closed == doctest::Approx(overlap_quadrature(m, mp, 0.0, 1.0)).epsilon(1e-10));
      CHECK(damping_overlap(mp, m) == closed);
      CHECK(closed >= -1e-12);
      CHECK(closed <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("general-interval overlap against quadrature") {
  for (auto [m, mp] : {std::pair{1, 1}, std::pair{3, 7}, std::pair{12, 12}}) {
    const double closed = damping_overlap_on(m, mp, 0.4, 2.9);
    CHECK(closed == doctest::Approx(overlap_quadrature(m, mp, 0.4, 2.9)).epsilon(1e-12));
  }
}

TEST_CASE("single-mode 2D assembly by hand") {
  WaveSpec spec;
  spec.n_modes_2d = 1;
  RealMatrix m = assemble_wave2d(spec);
  REQUIRE(m.rows() == 2);
  CHECK(m(0, 0) == 0.0);
  CHECK(m(0, 1) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(m(1, 0) == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-15));
  CHECK(m(1, 1) ==
        doctest::Approx(-(2.0 / kPi) * (0.5 - std::sin(2.0) / 4.0)).epsilon(1e-15));
}

TEST_CASE("strip-damped truncations are strictly stable") {
  for (int n : {4, 8, 16}) {
    WaveSpec spec;
    spec.n_modes_2d = n;
    CHECK(spectral_abscissa(assemble_wave2d(spec).cast<Complex>()) < 0);
  }
}

TEST_CASE("zero-width strip gives the skew-symmetric undamped wave") {
  WaveSpec spec;
  spec.n_modes_2d = 3;
  spec.strip_lo = spec.strip_hi = 0.7;
  RealMatrix m = assemble_wave2d(spec);
  CHECK((m + m.transpose()).norm() == 0.0);
}

TEST_CASE("full-domain strip yields the identity damping block") {
  WaveSpec spec;
  spec.n_modes_2d = 4;
  spec.strip_lo = 0.0;
  spec.strip_hi = kPi;
  RealMatrix m = assemble_wave2d(spec);
  const Index nm = 16;
  RealMatrix d = -m.bottomRightCorner(nm, nm);
  CHECK((d - RealMatrix::Identity(nm, nm)).norm() < 1e-12);
  // Uniform damping: all eigenvalue real parts at -1/2.
  SpectralReport r = spectral_check(m.cast<Complex>());
  for (const Complex& ev : r.eigenvalues) CHECK(ev.real() <= -0.2);
}

TEST_CASE("energy coordinates reproduce the analytic energy norm") {
  // Random coordinate vector -> trig polynomial v, v_t; quadrature of
  // |grad v|^2 + |v_t|^2 over (0, pi)^2 must equal the squared Euclidean norm.
  const int n = 3;
  WaveSpec spec;
  spec.n_modes_2d = n;
  std::mt19937_64 rng(71);
  std::normal_distribution<double> nd;
  RealVector state(2 * n * n);
  for (Index i = 0; i < state.size(); ++i) state(i) = nd(rng);

  std::vector<double> nodes, weights;
  gauss_legendre(24, nodes, weights);
  auto basis = [&](int m, int nn, double z1, double z2) {
    return (2.0 / kPi) * std::sin(m * z1) * std::sin(nn * z2);
  };
  double energy = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      const double z1 = 0.5 * kPi * (nodes[i] + 1.0);
      const double z2 = 0.5 * kPi * (nodes[j] + 1.0);
      const double w = 0.25 * kPi * kPi * weights[i] * weights[j];
      double vx = 0, vy = 0, vt = 0;
      for (int m = 1; m <= n; ++m) {
        for (int nn = 1; nn <= n; ++nn) {
          const Index idx = static_cast<Index>(m - 1) * n + (nn - 1);
          const double kappa = std::sqrt(double(m * m + nn * nn));
          const double pos = state(idx) / kappa;  // position coefficient in the plain basis
          vx += pos * (2.0 / kPi) * m * std::cos(m * z1) * std::sin(nn * z2);
          vy += pos * (2.0 / kPi) * nn * std::sin(m * z1) * std::cos(nn * z2);
          vt += state(n * n + idx) * basis(m, nn, z1, z2);
        }
      }
      energy += w * (vx * vx + vy * vy + vt * vt);
    }
  }
  CHECK(energy == doctest::Approx(state.squaredNorm()).epsilon(1e-10));
}

TEST_CASE("placed poles of the 1D model") {
  WaveSpec spec;
  spec.n_modes_1d = 4;
  DiagonalGenerator gen = assemble_wave1d_placed(spec);
  REQUIRE(gen.mode_count() == 8);
  CHECK(std::abs(gen.eigenvalues()[0] - Complex(-1.0, kPi)) < 1e-15);
  const Complex mu2(-std::pow(2.0, -5.0 / 3.0), 2.0 * kPi);
  CHECK(std::abs(gen.eigenvalues()[2] - mu2) < 1e-15);
  CHECK(std::abs(gen.eigenvalues()[2] - Complex(-0.31498, 6.28319)) < 1e-4);
  for (int k = 0; k < 4; ++k) {
    CHECK(gen.eigenvalues()[2 * k + 1] == std::conj(gen.eigenvalues()[2 * k]));
  }
}

TEST_CASE("coupling factor columns decay as (pi/2)/k^2") {
  WaveSpec spec;
  spec.n_modes_2d = 6;
  spec.n_modes_1d = 10;
  CouplingFactors f = assemble_wave_coupling(spec);
  REQUIRE(f.dim() == 6);
  for (int k = 1; k <= 6; ++k) {
    CHECK(f.left.entries.col(k - 1).norm() ==
          doctest::Approx(kPi / 2.0 / (k * k)).epsilon(1e-15));
  }
  CHECK(!f.coupling_dim_finite);
}

TEST_CASE("smoothness certificates are bounded in the truncation size") {
  // beta = 1: ||(-A1) B|| and gamma = 1: ||C (-A2)|| stay put as N grows.
  std::vector<double> b_norms, c_norms;
  for (int n : {8, 16, 32}) {
    WaveSpec spec;
    spec.n_modes_2d = n;
    spec.n_modes_1d = n;
    Matrix a1 = assemble_wave2d(spec).cast<Complex>();
    DiagonalGenerator gen = assemble_wave1d_placed(spec);
    CouplingFactors f = assemble_wave_coupling(spec);
    b_norms.push_back(operator_norm((-a1) * f.left.entries));
    c_norms.push_back(operator_norm(f.right.entries * (-gen.matrix())));
  }
  for (std::size_t i = 1; i < b_norms.size(); ++i) {
    CHECK(b_norms[i] == doctest::Approx(b_norms[0]).epsilon(0.05));
    CHECK(c_norms[i] == doctest::Approx(c_norms[0]).epsilon(0.05));
  }
}

TEST_CASE("assembled coupled system carries the declared exponents") {
  WaveSpec spec;
  spec.n_modes_2d = 3;
  spec.n_modes_1d = 6;
  BlockSystem sys = build_coupled_wave(spec);
  CHECK(sys.kind() == BlockKind::Triangular);
  CHECK(sys.dim() == 2 * 9 + 2 * 6);
  CHECK(sys.exponents().alpha1.alpha() == Rational(2));
  CHECK(sys.exponents().alpha2.alpha() == Rational(5, 3));
  CHECK(*sys.exponents().beta == Rational(1));
  CHECK(*sys.exponents().gamma == Rational(1));

  StabilityVerdict v = check_triangular(sys.exponents().alpha1, sys.exponents().alpha2,
                                        *sys.exponents().beta, *sys.exponents().gamma,
                                        sys.coupling_12().coupling_dim_finite);
  REQUIRE(v.applicable.has_value());
  CHECK(*v.applicable == Theorem::Thm3_1);
  CHECK(*v.predicted_alpha == Rational(2));
  CHECK(v.condition_margins[0].second == Rational(1, 10));
}

TEST_CASE("wave spec validation") {
  WaveSpec spec;
  spec.n_modes_2d = 0;
  CHECK_THROWS_AS(spec.validate(), InvariantError);
  spec = WaveSpec{};
  spec.strip_hi = 4.0;
  CHECK_THROWS_AS(spec.validate(), InvariantError);
  spec = WaveSpec{};
  spec.placement_exponent = Rational(0);
  CHECK_THROWS_AS(spec.validate(), InvariantError);
}

TEST_SUITE_END();
