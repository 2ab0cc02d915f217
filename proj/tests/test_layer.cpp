#include "chemotax/error.hpp"
#include "chemotax/layer.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace chemotax;

namespace {

ShadowParams layer_params() {
  ShadowParams sp;
  sp.a1 = 2, sp.a2 = 1, sp.b1 = 0, sp.b2 = 1, sp.c1 = 3, sp.c2 = 1, sp.r = 2, sp.L = 1;
  return sp;
}

// a1 = 1 moves the equal-area plateau inside the admissible interval
ShadowParams admissible_params() {
  ShadowParams sp = layer_params();
  sp.a1 = 1;
  return sp;
}

}  // namespace

TEST(Bistable, WindowAndTangency) {
  ShadowParams sp;
  sp.a2 = sp.b2 = sp.c2 = 1;
  sp.r = 6;
  const auto [lo, hi] = bistable_window(sp);
  EXPECT_DOUBLE_EQ(lo, 1);
  EXPECT_NEAR(hi, std::exp(5.0) / 6, 1e-12);
  const auto b = bistable_roots(10, sp);
  EXPECT_NEAR(b.v_star, 5.0 / 6, 1e-15);
  EXPECT_LT(b.v_bar1, b.v_star);
  EXPECT_GT(b.v_bar2, b.v_star);
  EXPECT_NEAR(bistable_f(sp, 10, b.v_bar1), 0, 1e-12);
  EXPECT_NEAR(bistable_f(sp, 10, b.v_bar2), 0, 1e-12);
  const auto t = bistable_roots(hi, sp);
  EXPECT_EQ(t.v_bar1, t.v_star);
  EXPECT_EQ(t.v_bar2, t.v_star);
  try {
    bistable_roots(sp.a2 / sp.b2, sp);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::OutsideWindow);
  }
}

TEST(Bistable, AntiderivativeMatchesQuadrature) {
  const ShadowParams sp = layer_params();
  const double l = 1.2, v = 0.6;
  const int n = 20000;
  double q = 0;
  for (int i = 0; i < n; ++i) {
    const double a = v * i / n, b = v * (i + 1) / n;
    q += (b - a) / 6 * (bistable_f(sp, l, a) + 4 * bistable_f(sp, l, 0.5 * (a + b)) + bistable_f(sp, l, b));
  }
  EXPECT_NEAR(bistable_F(sp, l, v), q, 1e-13);
}

TEST(LayerPredict, ClosedForms) {
  const ShadowParams sp = layer_params();
  EXPECT_NEAR(r_star(sp), 1.5 * std::log(3.0), 1e-12);
  const auto pr = layer_predict(0.75, sp);
  EXPECT_NEAR(pr.lambda0, 0.25 * std::exp(1.5), 1e-12);
  EXPECT_NEAR(pr.x0, 0.972866, 1e-6);
  EXPECT_NEAR(pr.v_bar2_double_star, 0.796812, 1e-6);
  EXPECT_GE(0.75, pr.I0.first);
  EXPECT_LE(0.75, pr.I0.second);
  const auto [lo, hi] = bistable_window(sp);
  EXPECT_GT(pr.lambda0, lo);
  EXPECT_LT(pr.lambda0, hi);
  EXPECT_NEAR(predicted_interface(sp.a1 / sp.c1, sp), sp.L, 1e-15);
}

TEST(LayerPredict, Errors) {
  ShadowParams sp = layer_params();
  try {
    layer_predict(0.5, sp);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::OutsideI0);
  }
  sp.r = 1.5;
  try {
    layer_predict(0.75, sp);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::RTooSmall);
  }
}

TEST(Heteroclinic, FirstIntegralTailAndNormalization) {
  const ShadowParams sp = layer_params();
  const auto prof = heteroclinic_profile(sp);
  EXPECT_NEAR(prof.lambda, 1.28312811084, 1e-10);
  EXPECT_LE(prof.hamiltonian_drift, 1e-6);
  EXPECT_NEAR(prof.kappa_fit / prof.kappa, 1, 0.02);
  EXPECT_EQ(prof(0.0), prof.v_bar2 / 2);
  // the orbit joins the plateau to 0 monotonically
  for (std::size_t i = 1; i < prof.V.size(); ++i) EXPECT_LE(prof.V[i], prof.V[i - 1]);
  EXPECT_NEAR(bistable_F(sp, prof.lambda, prof.v_bar2), 0, 1e-12);
}

TEST(Heteroclinic, NoEqualAreaWhenWindowIsEmpty) {
  ShadowParams sp = layer_params();
  sp.r = 0.9;  // r < c2/a2: no bistable window
  EXPECT_THROW(heteroclinic_profile(sp), Error);
}

// The literal parameter set has its equal-area plateau v_bar2* below a1/c1,
// outside the admissible interval, so no layer with mean v_bar2 = 0.75 exists.
// Newton falls back to the constant state.
TEST(LayerSolve, LiteralParametersHaveNoLayer) {
  ShadowParams sp = layer_params();
  sp.eps = 1e-4;
  const double v2star = bistable_roots(equal_area_lambda(sp), sp).v_bar2;
  EXPECT_LT(v2star, sp.a1 / sp.c1);
  const auto out = layer_solve(sp, 0.75);
  EXPECT_TRUE(std::isnan(out.report.x0_measured));
  if (out.solution) EXPECT_LE(out.solution->v.maxCoeff() - out.solution->v.minCoeff(), 1e-6);
}

TEST(LayerSolve, InterfaceConvergesInAdmissibleCase) {
  ShadowParams sp = admissible_params();
  const double v2 = bistable_roots(equal_area_lambda(sp), sp).v_bar2;
  double prev_err = 1e300, prev_dl = 1e300;
  for (double eps : {1e-3, 1e-4, 1e-5}) {
    sp.eps = eps;
    const auto out = layer_solve(sp, v2);
    ASSERT_TRUE(out.solution) << out.report.message;
    const auto& R = out.report;
    EXPECT_TRUE(R.converged);
    EXPECT_LT(R.interface_error, prev_err);
    const double dl = std::abs(R.lambda_eps - R.lambda0);
    EXPECT_LT(dl, prev_dl);
    const auto res = shadow_residual(*out.solution, sp);
    EXPECT_LE(res.norm(), 1e-10);
    EXPECT_LE(out.solution->v.maxCoeff(), sp.a2 / sp.c2 + 1e-8);
    prev_err = R.interface_error;
    prev_dl = dl;
    if (eps == 1e-4) EXPECT_LE(R.interface_error, 0.05);
  }
}

TEST(LayerSolve, ReflectionExtensionIsASolution) {
  ShadowParams sp = admissible_params();
  sp.eps = 1e-3;
  const double v2 = bistable_roots(equal_area_lambda(sp), sp).v_bar2;
  const auto out = layer_solve(sp, v2);
  ASSERT_TRUE(out.solution);
  const ShadowState& s = *out.solution;
  const int n = s.grid.n;
  ShadowParams sp2 = sp;
  sp2.L = 2 * sp.L;
  ShadowState ext{Grid1D(2 * n - 1, sp2.L), Field(2 * n - 1), s.lambda, sp.eps};
  for (int j = 0; j < n; ++j) ext.v[j] = ext.v[2 * n - 2 - j] = s.v[j];
  const ShadowState r = shadow_newton(sp2, ext, 1e-10);
  EXPECT_LE(shadow_residual(r, sp2).norm(), 1e-10);
  EXPECT_NEAR(r.lambda, s.lambda, 1e-9);
}

TEST(LevelCrossing, LinearInterpolation) {
  const Grid1D g(21, 1.0);
  Field v(21);
  for (int j = 0; j < 21; ++j) v[j] = 1 - g.x(j);
  EXPECT_NEAR(level_crossing(v, g, 0.27), 0.73, 1e-15);
  EXPECT_TRUE(std::isnan(level_crossing(v, g, 2.0)));
}
