#include "chemotax/grid.hpp"

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace chemotax;

TEST(ModeAmplitude, Orthogonality) {
  const Grid1D g(256, 2.0);
  const Field x = g.nodes();
  Field f(g.n);
  for (int j = 0; j < g.n; ++j) f[j] = 3 * std::cos(2 * std::numbers::pi * x[j] / g.L);
  EXPECT_NEAR(mode_amplitude(f, g, 2), 3.0, 1e-6);
  EXPECT_NEAR(mode_amplitude(f, g, 1), 0.0, 1e-6);
  EXPECT_NEAR(mode_amplitude(Field::Constant(g.n, 1.7), g, 0), 1.7, 1e-14);
}

TEST(Grid, WeightsIntegrateExactlyForLinears) {
  const Grid1D g(33, 3.0);
  EXPECT_NEAR(g.weights().sum(), 3.0, 1e-14);
  EXPECT_NEAR(integrate(g.nodes(), g), 4.5, 1e-13);
  EXPECT_DOUBLE_EQ(g.h(), 3.0 / 32);
}

TEST(Grid, CosineMode) {
  const Grid1D g(65, 1.0);
  const Field c = cosine_mode(g, 3);
  EXPECT_DOUBLE_EQ(c[0], 1);
  EXPECT_NEAR(c[g.n - 1], -1, 1e-15);
}

TEST(Tridiagonal, MatchesDenseSolve) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> U(-1, 1);
  const int n = 40;
  Eigen::VectorXd sub(n), diag(n), sup(n), rhs(n);
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    sub[i] = i ? U(rng) : 0;
    sup[i] = i + 1 < n ? U(rng) : 0;
    diag[i] = 4 + U(rng);
    rhs[i] = U(rng);
    A(i, i) = diag[i];
    if (i) A(i, i - 1) = sub[i];
    if (i + 1 < n) A(i, i + 1) = sup[i];
  }
  const Eigen::VectorXd ref = A.partialPivLu().solve(rhs);
  solve_tridiagonal(sub, diag, sup, rhs);
  EXPECT_LE((rhs - ref).cwiseAbs().maxCoeff(), 1e-13);
}
