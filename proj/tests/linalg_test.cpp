#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "ptc/error.hpp"
#include "ptc/linalg.hpp"

using namespace ptc;

namespace {

oracle::Dense to_dense(const Matrix& m) {
  oracle::Dense d(m.rows(), std::vector<double>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) d[i][j] = m(i, j);
  return d;
}

}  // namespace

TEST(Matrix, BasicAlgebra) {
  const Matrix a{{1, 2}, {3, 4}};
  const Matrix b{{0, 1}, {1, 0}};
  EXPECT_EQ(a * b, (Matrix{{2, 1}, {4, 3}}));
  EXPECT_EQ(a + b, (Matrix{{1, 3}, {4, 4}}));
  EXPECT_EQ(a - b, (Matrix{{1, 1}, {2, 4}}));
  EXPECT_EQ(2.0 * a, (Matrix{{2, 4}, {6, 8}}));
  EXPECT_EQ(a.transpose(), (Matrix{{1, 3}, {2, 4}}));
  EXPECT_EQ(hadamard(a, a), (Matrix{{1, 4}, {9, 16}}));
  const auto y = multiply(a, std::vector<double>{1, -1});
  EXPECT_EQ(y, (std::vector<double>{-1, -1}));
  EXPECT_DOUBLE_EQ(vector_norm(std::vector<double>{3, 4}), 5.0);
  EXPECT_DOUBLE_EQ(max_abs_entry(Matrix{{-7, 2}}), 7.0);
}

TEST(Matrix, ShapeMismatchThrows) {
  const Matrix a(2, 3);
  const Matrix b(2, 2);
  EXPECT_THROW(a * a, ShapeError);
  EXPECT_THROW(a + b, ShapeError);
  EXPECT_THROW(hadamard(a, b), ShapeError);
  EXPECT_THROW(multiply(a, std::vector<double>{1, 2}), ShapeError);
}

TEST(Matrix, KroneckerProduct) {
  const Matrix a{{1, 2}, {3, 4}};
  const Matrix k = kronecker(a, Matrix::identity(2));
  EXPECT_EQ(k.rows(), 4u);
  EXPECT_EQ(k(0, 0), 1.0);
  EXPECT_EQ(k(1, 1), 1.0);
  EXPECT_EQ(k(0, 2), 2.0);
  EXPECT_EQ(k(3, 1), 3.0);
  EXPECT_EQ(k(0, 1), 0.0);
}

TEST(Lu, SolvesAndDetectsSingular) {
  const Matrix a{{0, 2, 1}, {1, 1, 0}, {3, 0, 1}};
  const auto x = LuDecomposition(a).solve(std::vector<double>{5, 3, 6});
  const auto back = multiply(a, x);
  EXPECT_NEAR(back[0], 5.0, 1e-14);
  EXPECT_NEAR(back[1], 3.0, 1e-14);
  EXPECT_NEAR(back[2], 6.0, 1e-14);
  EXPECT_THROW(LuDecomposition(Matrix{{1, 2}, {2, 4}}), NumericalError);
}

TEST(Eigen, SymmetricKnownSpectrum) {
  const auto ev = symmetric_eigenvalues(Matrix{{3, 1}, {1, 1}});
  ASSERT_EQ(ev.size(), 2u);
  EXPECT_NEAR(ev[0], 2.0 - std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(ev[1], 2.0 + std::sqrt(2.0), 1e-14);
  const auto ev3 = symmetric_eigenvalues(Matrix{{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}});
  EXPECT_NEAR(ev3[0], 2.0 - std::sqrt(2.0), 1e-13);
  EXPECT_NEAR(ev3[1], 2.0, 1e-13);
  EXPECT_NEAR(ev3[2], 2.0 + std::sqrt(2.0), 1e-13);
}

TEST(SpectralNorm, MatchesPowerIteration) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix m(4, 3);
    for (double& v : m.data()) v = d(rng);
    EXPECT_NEAR(spectral_norm(m), oracle::power_iteration_norm(to_dense(m)), 1e-9);
  }
  EXPECT_DOUBLE_EQ(spectral_norm(Matrix(3, 3)), 0.0);
}

TEST(Companion, DenseAndPolynomial) {
  const CompanionMatrix e({-1, -2});
  EXPECT_EQ(e.dense(), (Matrix{{0, 1}, {-1, -2}}));
  EXPECT_EQ(e.characteristic_polynomial(), (std::vector<double>{1, 2, 1}));
}

TEST(Roots, RecoverKnownRoots) {
  const std::vector<double> roots{-1.0, -2.0, -3.5, 0.5};
  auto found = polynomial_roots(oracle::poly_from_roots(roots));
  ASSERT_EQ(found.size(), 4u);
  std::vector<double> re;
  for (const auto& z : found) {
    EXPECT_NEAR(z.imag(), 0.0, 1e-9);
    re.push_back(z.real());
  }
  std::sort(re.begin(), re.end());
  EXPECT_NEAR(re[0], -3.5, 1e-9);
  EXPECT_NEAR(re[1], -2.0, 1e-9);
  EXPECT_NEAR(re[2], -1.0, 1e-9);
  EXPECT_NEAR(re[3], 0.5, 1e-9);
}

TEST(Hurwitz, AgreesWithRouth) {
  EXPECT_TRUE(is_hurwitz(CompanionMatrix({-1, -2})));
  EXPECT_TRUE(is_hurwitz(CompanionMatrix({-1, -4, -6, -4})));
  EXPECT_FALSE(is_hurwitz(CompanionMatrix({1, 1})));
  EXPECT_FALSE(is_hurwitz(CompanionMatrix({-1, 0})));  // roots +-i
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> d(-5.0, 1.0);
  int agree = 0;
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<double> c(1 + trial % 6);
    for (double& v : c) v = d(rng);
    const CompanionMatrix e(c);
    agree += is_hurwitz(e) == oracle::routh_hurwitz(e.characteristic_polynomial());
  }
  EXPECT_EQ(agree, 300);
}

TEST(Lyapunov, ExampleTwoByTwo) {
  const auto sol = solve_lyapunov(CompanionMatrix({-1, -2}));
  EXPECT_NEAR(sol.P(0, 0), 3.0, 1e-12);
  EXPECT_NEAR(sol.P(0, 1), 1.0, 1e-12);
  EXPECT_NEAR(sol.P(1, 0), 1.0, 1e-12);
  EXPECT_NEAR(sol.P(1, 1), 1.0, 1e-12);
  EXPECT_LE(sol.residual, 1e-10);
  EXPECT_NEAR(sol.lambda_min, 2.0 - std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(sol.lambda_max, 2.0 + std::sqrt(2.0), 1e-12);
}

TEST(Lyapunov, ScalarAndRejection) {
  const auto sol = solve_lyapunov(CompanionMatrix({-4}));
  EXPECT_NEAR(sol.P(0, 0), 0.25, 1e-15);
  try {
    solve_lyapunov(CompanionMatrix({1, 1}));
    FAIL() << "expected InfeasibleDesign";
  } catch (const InfeasibleDesign& e) {
    EXPECT_STREQ(e.what(), "matrix E is not Hurwitz");
  }
}

TEST(Lyapunov, ResidualOnRepeatedRoots) {
  const CompanionMatrix e({-1, -4, -6, -4});
  const auto sol = solve_lyapunov(e);
  const Matrix ed = e.dense();
  const Matrix r = ed.transpose() * sol.P + sol.P * ed + 2.0 * Matrix::identity(4);
  EXPECT_LE(max_abs_entry(r), 1e-10);
  EXPECT_LE(sol.residual, 1e-10);
  EXPECT_EQ(sol.P, sol.P.transpose());
  EXPECT_GT(sol.lambda_min, 0.0);
}
