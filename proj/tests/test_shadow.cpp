#include "chemotax/error.hpp"
#include "chemotax/shadow.hpp"
#include "chemotax/shadow_limit.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

using namespace chemotax;

namespace {

ShadowParams at_theta(double r, double theta) {
  ShadowParams sp;
  sp.r = r;
  sp.a2 = theta / r + sp.c2 * sp.a1 / sp.c1;
  return sp;
}

double max_real(const std::vector<std::complex<double>>& ev) {
  double m = -1e300;
  for (auto z : ev) m = std::max(m, z.real());
  return m;
}

}  // namespace

TEST(ShadowEquilibrium, Examples) {
  ShadowParams sp;
  EXPECT_NEAR(shadow_equilibrium(sp).first, 2.0 / 3, 1e-15);
  ShadowParams bad = sp;
  bad.b1 = 3, bad.b2 = 1, bad.c1 = 3, bad.c2 = 1;  // b1 c2 = b2 c1
  EXPECT_THROW(shadow_equilibrium(bad), Error);
}

TEST(EpsilonN, Examples) {
  ShadowParams sp;
  EXPECT_NEAR(epsilon_n(sp, 1), 2.0 / 3, 1e-15);
  EXPECT_NEAR(epsilon_n(sp, 2), 1.0 / 6, 1e-15);
  for (int n = 1; n <= 8; ++n) EXPECT_EQ(epsilon_n(sp, n) * n * n, epsilon_n(sp, 1));
  ShadowParams none = at_theta(6, 0.9);  // theta <= c2
  try {
    epsilon_n(none, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NoBifurcation);
  }
}

TEST(ShadowSpectrum, ZeroEigenvalueAtDiscreteOnset) {
  ShadowParams sp;
  const Grid1D g(257, sp.L);
  for (int n = 1; n <= 3; ++n) {
    ShadowParams q = sp;
    q.eps = epsilon_n_h(sp, n, g);
    EXPECT_LE(std::abs(shadow_eigenvalue_nearest(shadow_constant_state(q, g), q, 1e-3)), 1e-8);
  }
}

TEST(ShadowSpectrum, StableAboveFirstOnset) {
  ShadowParams sp;
  sp.eps = 1.2 * epsilon_n(sp, 1);
  const Grid1D g(129, sp.L);
  EXPECT_LT(max_real(shadow_linearization_spectrum(shadow_constant_state(sp, g), sp, 6)), 0);
  sp.eps = 0.8 * epsilon_n(sp, 1);
  EXPECT_GT(max_real(shadow_linearization_spectrum(shadow_constant_state(sp, g), sp, 6)), 0);
}

TEST(ShadowSpectrum, BorderedMatchesDenseQZ) {
  ShadowParams sp;
  sp.eps = 0.5;
  const Grid1D g(32, sp.L);
  ShadowState s = shadow_constant_state(sp, g);
  for (int j = 0; j < g.n; ++j) s.v[j] *= 1 + 0.05 * std::cos(3.0 * j);
  auto a = shadow_linearization_spectrum(s, sp, 8);
  auto b = shadow_spectrum_qz(s, sp);
  auto by_real = [](auto x, auto y) { return x.real() > y.real(); };
  std::sort(a.begin(), a.end(), by_real);
  std::sort(b.begin(), b.end(), by_real);
  ASSERT_GE(b.size(), a.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(std::abs(a[i] - b[i]), 0, 1e-8 * (1 + std::abs(b[i])));
}

TEST(ShadowJacobian, MatchesFiniteDifferences) {
  ShadowParams sp;
  sp.b1 = 0.3;
  sp.eps = 0.2;
  const Grid1D g(64, sp.L);
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> U(0.3, 0.9);
  ShadowState s = shadow_constant_state(sp, g);
  for (int j = 0; j < g.n; ++j) s.v[j] = U(rng);
  const Eigen::MatrixXd J(shadow_jacobian(s, sp));
  auto F = [&](const ShadowState& t) {
    const auto r = shadow_residual(t, sp);
    Eigen::VectorXd out(g.n + 1);
    out.head(g.n) = r.r;
    out[g.n] = r.constraint;
    return out;
  };
  const double h = 1e-7;
  double worst = 0;
  for (int c = 0; c <= g.n; ++c) {
    ShadowState p = s, m = s;
    if (c < g.n) p.v[c] += h, m.v[c] -= h;
    else p.lambda += h, m.lambda -= h;
    const Eigen::VectorXd col = (F(p) - F(m)) / (2 * h);
    worst = std::max(worst, (col - J.col(c)).cwiseAbs().maxCoeff() / (1e-3 + J.col(c).cwiseAbs().maxCoeff()));
  }
  EXPECT_LE(worst, 1e-5);
}

TEST(ShadowNewton, ExactRootAndPitchfork) {
  ShadowParams sp;
  const Grid1D g(129, sp.L);
  NewtonReport rep;
  sp.eps = 0.5;
  const ShadowState c = shadow_constant_state(sp, g);
  shadow_newton(sp, c, 1e-10, &rep);
  EXPECT_LE(rep.iterations, 1);

  // amplitude^2 linear in (eps_1 - eps) just below onset
  const double e1 = epsilon_n_h(sp, 1, g);
  const auto K = shadow_K2(sp, 1);
  std::vector<double> d, a2;
  for (double t : {2e-4, 4e-4, 8e-4}) {
    ShadowParams q = sp;
    q.eps = e1 * (1 - t);
    ShadowState guess = shadow_constant_state(q, g);
    const double s = std::sqrt(std::abs(q.eps - e1) / std::abs(K.K2));
    guess.v += s * cosine_mode(g, 1);
    const ShadowState r = shadow_newton(q, guess, 1e-11);
    const auto res = shadow_residual(r, q);
    EXPECT_LE(res.norm(), 1e-10);
    EXPECT_LE(r.v.maxCoeff(), q.a2 / q.c2 + 1e-8);
    const double a = mode_amplitude(r.v, g, 1);
    EXPECT_GT(std::abs(a), 1e-3);
    d.push_back(e1 - q.eps);
    a2.push_back(a * a);
  }
  const double s1 = a2[1] / d[1], s0 = a2[0] / d[0], s2 = a2[2] / d[2];
  EXPECT_NEAR(s0 / s1, 1, 0.01);
  EXPECT_NEAR(s2 / s1, 1, 0.01);
  EXPECT_NEAR(s1, 1 / std::abs(K.K2), 0.05 / std::abs(K.K2));
}

TEST(ShadowK2, ProofIdentities) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> R(0.1, 20), T(1.001, 15);
  int checked = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto K = shadow_K2(at_theta(R(rng), T(rng)), 1);
    ASSERT_TRUE(K.specialized);
    EXPECT_GT(K.beta * K.beta - 4 * K.alpha * K.gamma, 0);
    ++checked;
  }
  EXPECT_EQ(checked, 1000);
  // F(c2) = a1 vbar c2^2 r^2 > 0 (vbar = 2/3, c2 = 1 here)
  for (double r : {0.5, 3.0, 9.0}) {
    const auto K = shadow_K2(at_theta(r, 2), 1);
    const double Fc2 = K.alpha + K.beta + K.gamma;
    EXPECT_NEAR(Fc2, 2 * (2.0 / 3) * r * r, 1e-10 * r * r);
    EXPECT_GT(Fc2, 0);
  }
}

TEST(ShadowK2, ThresholdTwentyEightOverTwentySeven) {
  const double r = 0.75;  // r vbar = 1/2
  EXPECT_GT(shadow_K2(at_theta(r, 28.0 / 27 - 1e-3), 1).K2, 0);
  EXPECT_LT(shadow_K2(at_theta(r, 28.0 / 27 + 1e-3), 1).K2, 0);
  EXPECT_NEAR(shadow_K2(at_theta(r, 28.0 / 27), 1).F, 0, 1e-12);
}

TEST(ShadowK2, OneTwentyOverOneElevenBoundary) {
  // r vbar = 8: F = 8 c1 c2 (119 c2 - 111 theta), so the sign changes at
  // 119/111 and the listed 120/111 leaves a sliver with the wrong sign
  const double r = 12;
  const auto lo = shadow_K2(at_theta(r, 119.0 / 111 - 0.02), 1);
  const auto hi = shadow_K2(at_theta(r, 120.0 / 111 + 0.03), 1);
  EXPECT_GT(lo.K2, 0);
  EXPECT_LT(hi.K2, 0);
  EXPECT_EQ(lo.table_sign, 1);
  EXPECT_EQ(hi.table_sign, -1);
  EXPECT_NEAR(shadow_K2(at_theta(r, 119.0 / 111), 1).F, 0, 1e-9);
  const auto sliver = shadow_K2(at_theta(r, 119.5 / 111), 1);
  EXPECT_LT(sliver.K2, 0);
  EXPECT_EQ(sliver.table_sign, 1);
}

TEST(ShadowK2, GeneralRouteAgreesWithClosedForm) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> R(0.3, 15), T(1.05, 10);
  for (int i = 0; i < 50; ++i) {
    ShadowParams sp = at_theta(R(rng), T(rng));
    const auto a = shadow_K2(sp, 1);
    sp.sensitivity.p = {1, 1e-300, 0, 0};  // forces the general route with Phi = v numerically
    const auto b = shadow_K2(sp, 1);
    ASSERT_FALSE(b.specialized);
    EXPECT_NEAR(a.K2, b.K2, 1e-9 * (1 + std::abs(a.K2)));
  }
}

TEST(ShadowLimit, NoAdvectionGivesFlatState) {
  ModelParams p;
  p.D2 = 0.1;
  ShadowLimitOptions o;
  o.n = 65;
  o.t_end = 300;
  const auto tab = shadow_limit_check(p, 1e-6, {1e2, 1e3, 1e4}, o);  // chi = r D1 <= 1e-2
  for (const auto& row : tab.rows) {
    EXPECT_TRUE(row.relaxed) << row.error;
    EXPECT_LE(row.v_osc, 1e-4);
  }
}
