#include <gtest/gtest.h>

#include <random>

#include "modval/numerics.hpp"
#include "oracles.hpp"

using namespace modval;

TEST(Kron, IdentityTimesIdentity) {
  EXPECT_EQ(max_abs_diff(kron(ComplexMatrix::identity(2), ComplexMatrix::identity(2)), ComplexMatrix::identity(4)),
            0.0);
}

TEST(Kron, DiagonalTimesIdentity) {
  const std::vector<Complex> d12{1.0, 2.0};
  const std::vector<Complex> d1122{1.0, 1.0, 2.0, 2.0};
  EXPECT_EQ(max_abs_diff(kron(ComplexMatrix::diagonal(d12), ComplexMatrix::identity(2)),
                         ComplexMatrix::diagonal(d1122)),
            0.0);
}

TEST(Kron, SigmaXWithProjectorMatchesIndexFormula) {
  const ComplexMatrix sx{{0.0, 1.0}, {1.0, 0.0}};
  ComplexMatrix p(3, 3);
  p(1, 1) = 1.0;
  const auto k = kron(sx, p);
  ASSERT_EQ(k.rows(), 6u);
  ASSERT_EQ(k.cols(), 6u);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 3; ++c) EXPECT_EQ(k(i * 3 + r, j * 3 + c), sx(i, j) * p(r, c));
  // Only the two coupling entries survive.
  EXPECT_EQ(k(1, 4), Complex(1.0));
  EXPECT_EQ(k(4, 1), Complex(1.0));
}

TEST(Kron, AssociativeOnRandomMatrices) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const auto a = oracle::random_matrix(rng, 2, 1.0);
    const auto b = oracle::random_matrix(rng, 3, 1.0);
    const auto c = oracle::random_matrix(rng, 2, 1.0);
    EXPECT_LT(max_abs_diff(kron(kron(a, b), c), kron(a, kron(b, c))), 1e-12);
  }
}

TEST(MatExp, ZeroIsIdentity) {
  EXPECT_EQ(max_abs_diff(mat_exp(ComplexMatrix(5, 5)), ComplexMatrix::identity(5)), 0.0);
}

TEST(MatExp, SigmaXRotationClosedForm) {
  const ComplexMatrix sx{{0.0, 1.0}, {1.0, 0.0}};
  for (double g : {0.1, 1.0, kPi / 2.0, 2.5, kPi, 7.0}) {
    const auto e = mat_exp(sx * Complex{0.0, -g});
    const auto expected = ComplexMatrix::identity(2) * Complex{std::cos(g), 0.0} + sx * Complex{0.0, -std::sin(g)};
    EXPECT_LT(max_abs_diff(e, expected), 1e-12) << "g=" << g;
  }
}

TEST(MatExp, DiagonalEntriesExponentiateIndependently) {
  const std::vector<Complex> d{Complex{0.0, kPi}, 0.0};
  const std::vector<Complex> expected{-1.0, 1.0};
  EXPECT_LT(max_abs_diff(mat_exp(ComplexMatrix::diagonal(d)), ComplexMatrix::diagonal(expected)), 1e-12);
}

TEST(MatExp, InverseProperty) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> dims(1, 16);
  for (int trial = 0; trial < 25; ++trial) {
    const auto m = oracle::random_matrix(rng, static_cast<std::size_t>(dims(rng)), 2.0);
    const auto prod = mat_exp(m) * mat_exp(m * Complex{-1.0, 0.0});
    EXPECT_LT(max_abs_diff(prod, ComplexMatrix::identity(m.rows())), 1e-10) << "trial " << trial;
  }
}

TEST(MatExp, RejectsBadInput) {
  EXPECT_THROW(mat_exp(ComplexMatrix(2, 3)), std::invalid_argument);
  EXPECT_THROW(mat_exp(ComplexMatrix(2, 2), 0.0), std::invalid_argument);
}

TEST(Hermite, BaseCases) {
  const Complex z{0.3, -1.2};
  EXPECT_EQ(hermite(0, z), Complex(1.0));
  EXPECT_EQ(hermite(1, z), 2.0 * z);
  EXPECT_EQ(hermite(3, 1.0), Complex(-4.0));
}

TEST(Hermite, MatchesExplicitExpansion) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 20; ++i) {
    const Complex z{u(rng), u(rng)};
    for (unsigned n = 0; n <= 10; ++n) {
      const Complex ref = oracle::hermite_expansion(n, z);
      EXPECT_LE(std::abs(hermite(n, z) - ref), 1e-10 * std::max(1.0, std::abs(ref))) << "n=" << n << " z=" << z;
    }
  }
}

TEST(ComplexArithmetic, DivisionByZeroIsAnError) {
  EXPECT_THROW(checked_div(1.0, 0.0), std::domain_error);
  EXPECT_EQ(checked_div(Complex{0.0, 2.0}, Complex{0.0, 1.0}), Complex(2.0));
}
