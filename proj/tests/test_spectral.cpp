#include <doctest.h>

#include <cmath>
#include <random>

#include "polystab/spectral.hpp"
#include "test_support.hpp"

using namespace polystab;
using namespace polystab::testing;

TEST_SUITE_BEGIN("spectral");

TEST_CASE("generator invariants are enforced") {
  CHECK_THROWS_AS(DiagonalGenerator::from_eigenvalues({}), InvariantError);
  CHECK_THROWS_AS(DiagonalGenerator::from_eigenvalues({{0.0, 1.0}}), InvariantError);
  CHECK_THROWS_AS(DiagonalGenerator::from_eigenvalues({{0.5, 0.0}}), InvariantError);
  CHECK_THROWS_AS(DiagonalGenerator::from_eigenvalues({{-1.0, 2.0}, {-1.0, 2.0}}),
                  InvariantError);
  CHECK_THROWS_AS(DiagonalGenerator({{-1.0, 0.0}}, {"a", "b"}), InvariantError);
  CHECK_NOTHROW(DiagonalGenerator::from_eigenvalues({{-1.0, 2.0}, {-1.0, -2.0}}));
}

TEST_CASE("fractional power of a single negative real mode") {
  auto gen = DiagonalGenerator::from_eigenvalues({{-1.0, 0.0}});
  OperatorMatrix half = fractional_power(gen, 0.5);
  CHECK(std::abs(half.entries(0, 0) - Complex(1.0, 0.0)) < 1e-15);
}

TEST_CASE("beta = 0 gives the identity") {
  auto gen = damped_generator(1.5, 7);
  OperatorMatrix id = fractional_power(gen, 0.0);
  CHECK((id.entries - Matrix::Identity(7, 7)).norm() == 0.0);
}

TEST_CASE("complex mode follows the principal branch") {
  // lambda = -1 + i, so (-lambda)^{1/2} = exp(log(1 - i)/2).
  auto gen = DiagonalGenerator::from_eigenvalues({{-1.0, 1.0}});
  OperatorMatrix half = fractional_power(gen, 0.5);
  const Complex expected = std::exp(0.5 * std::log(Complex(1.0, -1.0)));
  CHECK(std::abs(half.entries(0, 0) - expected) < 1e-15);
  CHECK(std::abs(half.entries(0, 0) - Complex(1.0987, -0.4551)) < 1e-4);
  // Its square must recover 1 - i.
  const Complex sq = half.entries(0, 0) * half.entries(0, 0);
  CHECK(std::abs(sq - Complex(1.0, -1.0)) < 1e-14);
}

TEST_CASE("beta = 1 equals diag(-lambda) exactly") {
  auto gen = damped_generator(2.0, 9);
  OperatorMatrix one = fractional_power(gen, 1.0);
  for (Index k = 0; k < 9; ++k) {
    CHECK(one.entries(k, k) == -gen.eigenvalues()[static_cast<std::size_t>(k)]);
  }
}

TEST_CASE("power additivity") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ud(0.0, 2.0);
  auto gen = damped_generator(5.0 / 3.0, 12);
  for (int trial = 0; trial < 20; ++trial) {
    const double b1 = ud(rng), b2 = ud(rng);
    Matrix lhs = fractional_power(gen, b1 + b2).entries;
    Matrix rhs = fractional_power(gen, b1).entries * fractional_power(gen, b2).entries;
    for (Index k = 0; k < 12; ++k) {
      CHECK(std::abs(lhs(k, k) - rhs(k, k)) <= 1e-12 * std::abs(lhs(k, k)));
    }
  }
}

TEST_CASE("negative beta is rejected") {
  auto gen = damped_generator(1.0, 3);
  CHECK_THROWS_AS(fractional_power(gen, -0.5), InvariantError);
}

TEST_CASE("inverse power inverts the power") {
  auto gen = damped_generator(1.0, 6);
  Matrix prod = fractional_power(gen, 0.7).entries * fractional_power_inverse(gen, 0.7).entries;
  CHECK((prod - Matrix::Identity(6, 6)).norm() < 1e-14);
}

TEST_CASE("graph norm picks the dominant weighted mode") {
  // diag(-k): the first coordinate column weighted by (-lambda_1)^2 = 1.
  std::vector<Complex> eigs;
  for (int k = 1; k <= 10; ++k) eigs.emplace_back(-static_cast<double>(k), 0.0);
  auto gen = DiagonalGenerator::from_eigenvalues(std::move(eigs));
  Matrix col = Matrix::Zero(10, 1);
  col(0, 0) = 1.0;
  CHECK(graph_norm(gen, 2.0, OperatorMatrix{col, "modal"}) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("rank-one factor from the exp/pol example") {
  // B2 = n^{-alpha/2} e_n against diag(-1/k^alpha + i k). The exact norm is
  // (n^{-2 alpha} + n^2)^{beta/2} * n^{-alpha/2}, which approaches the
  // n^{beta - alpha/2} scaling law from above as n grows.
  const double alpha = 5.0 / 3.0;
  for (int n : {2, 8, 32}) {
    auto gen = damped_generator(alpha, 40);
    Matrix col = Matrix::Zero(40, 1);
    col(n - 1, 0) = std::pow(static_cast<double>(n), -alpha / 2.0);
    for (double beta : {0.0, 0.4, 1.0}) {
      const double got = graph_norm(gen, beta, OperatorMatrix{col, "modal"});
      const double exact = std::pow(std::pow(n, -2.0 * alpha) + n * n, beta / 2.0) *
                           std::pow(static_cast<double>(n), -alpha / 2.0);
      CHECK(got == doctest::Approx(exact).epsilon(1e-12));
      const double scaling_law = std::pow(static_cast<double>(n), beta - alpha / 2.0);
      CHECK(got >= scaling_law * (1.0 - 1e-12));
      CHECK(got == doctest::Approx(scaling_law).epsilon(0.011));
    }
  }
}

TEST_CASE("graph norm agrees with an independent norm oracle") {
  std::mt19937_64 rng(42);
  auto gen = damped_generator(1.2, 8);
  for (int trial = 0; trial < 10; ++trial) {
    Matrix f = random_matrix(8, 2, rng);
    Matrix scaled = fractional_power(gen, 0.8).entries * f;
    const double oracle = power_method_norm(scaled);
    const double got = graph_norm(gen, 0.8, OperatorMatrix{f, "modal"});
    CHECK(got == doctest::Approx(oracle).epsilon(1e-10));
  }
}

TEST_CASE("adjoint-side norm via the conjugate transpose") {
  // ||(-A*)^g C*|| computed densely must match graph_norm(gen, g, C^H).
  std::mt19937_64 rng(3);
  auto gen = damped_generator(1.0, 6);
  Matrix c = random_matrix(2, 6, rng);
  Matrix dense = Matrix::Zero(6, 6);
  for (Index k = 0; k < 6; ++k) {
    dense(k, k) = std::exp(0.6 * std::log(-std::conj(gen.eigenvalues()[static_cast<std::size_t>(k)])));
  }
  const double direct = power_method_norm(dense * c.adjoint());
  const double via_graph = graph_norm(gen, 0.6, OperatorMatrix{c.adjoint(), "modal"});
  CHECK(via_graph == doctest::Approx(direct).epsilon(1e-10));
}

TEST_CASE("graph norm is unchanged by appending zero rows") {
  std::mt19937_64 rng(11);
  auto gen8 = damped_generator(1.7, 8);
  auto gen12 = damped_generator(1.7, 12);
  Matrix f = random_matrix(8, 3, rng);
  Matrix padded = Matrix::Zero(12, 3);
  padded.topRows(8) = f;
  const double a = graph_norm(gen8, 0.9, OperatorMatrix{f, "modal"});
  const double b = graph_norm(gen12, 0.9, OperatorMatrix{padded, "modal"});
  CHECK(a == doctest::Approx(b).epsilon(1e-13));
}

TEST_CASE("dimension mismatch is rejected") {
  auto gen = damped_generator(1.0, 4);
  CHECK_THROWS_AS(graph_norm(gen, 1.0, OperatorMatrix{Matrix::Zero(5, 1), "modal"}),
                  DimensionError);
}

TEST_SUITE_END();
