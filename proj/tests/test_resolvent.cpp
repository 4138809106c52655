#include <doctest.h>

#include <cmath>
#include <random>

#include "polystab/resolvent.hpp"
#include "polystab/wave.hpp"
#include "test_support.hpp"

using namespace polystab;
using namespace polystab::testing;

TEST_SUITE_BEGIN("resolvent");

TEST_CASE("scalar and diagonal resolvents") {
  Matrix m(1, 1);
  m << Complex(-1, 0);
  CHECK(std::abs(resolvent_direct(m, Complex(0, 0))(0, 0) - Complex(1, 0)) < 1e-15);

  Matrix d(2, 2);
  d << Complex(-1, 0), Complex(0, 0), Complex(0, 0), Complex(-2, 0);
  Matrix r = resolvent_direct(d, Complex(0, 1));
  CHECK(std::abs(r(0, 0) - 1.0 / Complex(1, 1)) < 1e-15);
  CHECK(std::abs(r(1, 1) - 1.0 / Complex(2, 1)) < 1e-15);
}

TEST_CASE("direct resolvent satisfies the residual contract") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix m = random_matrix(6, 6, rng);
    const Complex lambda(1.0, 0.5);
    Matrix r = resolvent_direct(m, lambda);
    Matrix shifted = -m;
    shifted.diagonal().array() += lambda;
    const double residual = (shifted * r - Matrix::Identity(6, 6)).norm();
    CHECK(residual <= 1e-10 * r.norm());
  }
}

TEST_CASE("spectral points are signalled") {
  Matrix m(2, 2);
  m << Complex(-1, 0), Complex(0, 0), Complex(0, 0), Complex(0, 2);
  CHECK_THROWS_AS(resolvent_direct(m, Complex(0, 2)), SpectralPointError);
  Matrix z = Matrix::Zero(1, 1);
  CHECK_THROWS_AS(resolvent_direct(z, Complex(0, 0)), SpectralPointError);
}

TEST_CASE("triangular resolvent, 2x2 by hand") {
  Matrix a1(1, 1), a2(1, 1), b(1, 1), c(1, 1);
  a1 << Complex(-1, 0);
  a2 << Complex(-2, 0);
  b << Complex(3, 0);
  c << Complex(1, 0);
  BlockSystem sys = assemble_triangular(a1, a2, OperatorMatrix{b, "m"}, OperatorMatrix{c, "m"});
  Matrix r = resolvent_triangular(sys, Complex(0, 0));
  CHECK(std::abs(r(0, 0) - Complex(1.0, 0)) < 1e-15);
  CHECK(std::abs(r(0, 1) - Complex(1.5, 0)) < 1e-15);
  CHECK(std::abs(r(1, 0)) == 0.0);
  CHECK(std::abs(r(1, 1) - Complex(0.5, 0)) < 1e-15);
}

TEST_CASE("zero coupling gives a block-diagonal resolvent") {
  std::mt19937_64 rng(22);
  Matrix a1 = random_stable_matrix(3, rng);
  Matrix a2 = random_stable_matrix(2, rng);
  BlockSystem sys = assemble_triangular(a1, a2, CouplingFactors::zero(3, 2));
  Matrix r = resolvent_triangular(sys, Complex(0.3, 1.7));
  CHECK(r.topRightCorner(3, 2).norm() == 0.0);
}

TEST_CASE("triangular formula agrees with the direct inverse") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> re(0.0, 2.0), im(-6.0, 6.0);
  for (int trial = 0; trial < 8; ++trial) {
    Matrix a1 = random_stable_matrix(5, rng);
    Matrix a2 = random_stable_matrix(4, rng);
    BlockSystem sys = assemble_triangular(a1, a2, OperatorMatrix{random_matrix(5, 2, rng), "m"},
                                          OperatorMatrix{random_matrix(2, 4, rng), "m"});
    Matrix dense = sys.dense();
    for (int j = 0; j < 50; ++j) {
      const Complex lambda(re(rng), im(rng));
      Matrix structured = resolvent_triangular(sys, lambda);
      Matrix direct = resolvent_direct(dense, lambda);
      CHECK((structured - direct).norm() <= 1e-8 * direct.norm());
    }
  }
}

TEST_CASE("coupled wave resolvent at lambda = 3i") {
  WaveSpec spec;
  spec.n_modes_2d = 3;
  spec.n_modes_1d = 8;
  BlockSystem sys = build_coupled_wave(spec);
  const Complex lambda(0, 3);
  Matrix structured = resolvent_triangular(sys, lambda);
  Matrix direct = resolvent_direct(sys.dense(), lambda);
  CHECK((structured - direct).norm() <= 1e-8 * direct.norm());
}

TEST_CASE("full resolvent with zero couplings is block diagonal") {
  std::mt19937_64 rng(24);
  Matrix a1 = random_stable_matrix(3, rng);
  Matrix a2 = random_stable_matrix(3, rng);
  BlockSystem sys =
      assemble_full(a1, a2, CouplingFactors::zero(3, 3), CouplingFactors::zero(3, 3));
  Matrix r = resolvent_full_schur(sys, Complex(1, 1));
  CHECK(r.topRightCorner(3, 3).norm() == 0.0);
  CHECK(r.bottomLeftCorner(3, 3).norm() == 0.0);
}

TEST_CASE("schur-complement formula agrees with the direct inverse") {
  std::mt19937_64 rng(25);
  std::uniform_real_distribution<double> re(0.0, 2.0), im(-5.0, 5.0);
  for (int trial = 0; trial < 8; ++trial) {
    Matrix a1 = random_stable_matrix(4, rng);
    Matrix a2 = random_stable_matrix(4, rng);
    BlockSystem sys = assemble_full(a1, a2, {OperatorMatrix{random_matrix(4, 2, rng), "m"},
                                             OperatorMatrix{random_matrix(2, 4, rng), "m"}, true},
                                    {OperatorMatrix{random_matrix(4, 1, rng), "m"},
                                     OperatorMatrix{random_matrix(1, 4, rng), "m"}, true});
    Matrix dense = sys.dense();
    int compared = 0;
    for (int j = 0; j < 50; ++j) {
      const Complex lambda(re(rng), im(rng));
      try {
        Matrix structured = resolvent_full_schur(sys, lambda);
        Matrix direct = resolvent_direct(dense, lambda);
        CHECK((structured - direct).norm() <= 1e-8 * direct.norm());
        ++compared;
      } catch (const LoopSingularError&) {
        // A singular loop operator is a legitimate outcome, never a wrong value.
      }
    }
    CHECK(compared >= 45);
  }
}

TEST_CASE("loop singularity raises the dedicated error") {
  // The rank-one exp/pol system makes D_lambda vanish exactly at lambda = i n.
  const double alpha2 = 5.0 / 3.0;
  const int n = 3, modes = 6;
  std::vector<Complex> e1, e2;
  for (int k = 1; k <= modes; ++k) {
    e1.emplace_back(-1.0, k);
    e2.emplace_back(-std::pow(double(k), -alpha2), k);
  }
  const double s = std::pow(double(n), -alpha2 / 2.0);
  Matrix b1 = Matrix::Zero(modes, 1), c1 = Matrix::Zero(1, modes);
  Matrix b2 = Matrix::Zero(modes, 1), c2 = Matrix::Zero(1, modes);
  b1(n - 1, 0) = 1.0;
  c1(0, n - 1) = 1.0;
  b2(n - 1, 0) = s;
  c2(0, n - 1) = s;
  BlockSystem sys = assemble_full(DiagonalGenerator::from_eigenvalues(e1).matrix(),
                                  DiagonalGenerator::from_eigenvalues(e2).matrix(),
                                  OperatorMatrix{b1, "m"}, OperatorMatrix{c1, "m"},
                                  OperatorMatrix{b2, "m"}, OperatorMatrix{c2, "m"});
  CHECK_THROWS_AS(resolvent_full_schur(sys, Complex(0, n)), LoopSingularError);
  // Slightly off the singular point the formula is valid again.
  Matrix structured = resolvent_full_schur(sys, Complex(0.5, n));
  Matrix direct = resolvent_direct(sys.dense(), Complex(0.5, n));
  CHECK((structured - direct).norm() <= 1e-8 * direct.norm());
}

TEST_SUITE_END();
