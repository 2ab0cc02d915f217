#include "chemotax/error.hpp"
#include "chemotax/model.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace chemotax;

namespace {

ModelParams competition(double a1, double a2, double b1, double b2, double c1, double c2) {
  ModelParams p;
  p.a1 = a1, p.a2 = a2, p.b1 = b1, p.b2 = b2, p.c1 = c1, p.c2 = c2;
  return p;
}

ModelParams random_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> U(0.2, 4);
  return competition(U(rng), U(rng), U(rng), U(rng), U(rng), U(rng));
}

}  // namespace

TEST(Competition, WeakStrongDegenerate) {
  EXPECT_EQ(classify_competition(competition(3, 2, 2, 1, 1, 2)), CompetitionRegime::Weak);
  EXPECT_EQ(classify_competition(competition(2, 1, 1, 1, 3, 1)), CompetitionRegime::Strong);
  EXPECT_EQ(classify_competition(competition(1, 1, 1, 1, 1, 1)), CompetitionRegime::Degenerate);
}

TEST(Competition, InvariantUnderRescaling) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> S(0.1, 10);
  for (int i = 0; i < 200; ++i) {
    ModelParams p = random_params(rng);
    ModelParams q = p;
    const double s1 = S(rng), s2 = S(rng);
    q.a1 *= s1, q.b1 *= s1, q.c1 *= s1;
    q.a2 *= s2, q.b2 *= s2, q.c2 *= s2;
    EXPECT_EQ(classify_competition(p), classify_competition(q));
  }
}

TEST(Equilibria, ClosedForms) {
  auto w = coexistence_state(competition(3, 2, 2, 1, 1, 2));
  EXPECT_NEAR(w.u, 4.0 / 3, 1e-15);
  EXPECT_NEAR(w.v, 1.0 / 3, 1e-15);
  auto s = coexistence_state(competition(2, 1, 1, 1, 3, 1));
  EXPECT_NEAR(s.u, 0.5, 1e-15);
  EXPECT_NEAR(s.v, 0.5, 1e-15);
}

TEST(Equilibria, NewtonOracleOnKinetics) {
  // independent 2x2 Newton on f = g = 0 from a nearby start
  ModelParams p = competition(3, 2, 2, 1, 1, 2);
  double u = 1, v = 0.5;
  for (int it = 0; it < 30; ++it) {
    const Kinetics k = kinetics(p, u, v);
    const double det = k.fu * k.gv - k.fv * k.gu;
    const double du = (-k.f * k.gv + k.fv * k.g) / det;
    const double dv = (-k.fu * k.g + k.gu * k.f) / det;
    u += du, v += dv;
  }
  const auto c = coexistence_state(p);
  EXPECT_NEAR(u, c.u, 1e-14);
  EXPECT_NEAR(v, c.v, 1e-14);
}

TEST(Equilibria, SingularDenominator) {
  ModelParams p = competition(1, 2, 2, 1, 2, 1);  // b1 c2 = b2 c1
  try {
    coexistence_state(p);
    FAIL() << "expected SingularDenominator";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SingularDenominator);
  }
}

TEST(Equilibria, SetListsBoundaryStates) {
  const auto e = equilibria(competition(3, 2, 2, 1, 1, 2));
  ASSERT_TRUE(e.semitrivial_u && e.semitrivial_v && e.coexistence);
  EXPECT_NEAR(e.semitrivial_u->u, 1.5, 1e-15);
  EXPECT_EQ(e.semitrivial_u->v, 0);
  EXPECT_NEAR(e.semitrivial_v->v, 1.0, 1e-15);
  EXPECT_EQ(e.semitrivial_v->u, 0);
}

TEST(Equilibria, ResidualOfClosedFormOnRandomDraws) {
  std::mt19937_64 rng(11);
  int checked = 0;
  for (int i = 0; i < 2000 && checked < 500; ++i) {
    ModelParams p = random_params(rng);
    if (p.b1 * p.c2 == p.b2 * p.c1) continue;
    Point2 c;
    try {
      c = coexistence_state(p);
    } catch (const Error&) {
      continue;
    }
    const Kinetics k = kinetics(p, c.u, c.v);
    EXPECT_LE(std::abs(k.f) + std::abs(k.g), 1e-12 * (1 + std::abs(p.a1) + std::abs(p.a2)));
    ++checked;
  }
  EXPECT_GE(checked, 100);
}

TEST(Kinetics, Origin) {
  ModelParams p = competition(3, 2, 2, 1, 1, 2);
  const Kinetics k = kinetics(p, 0, 0);
  EXPECT_EQ(k.f, 0);
  EXPECT_EQ(k.g, 0);
  EXPECT_EQ(k.fu, 3);
  EXPECT_EQ(k.gv, 2);
}

TEST(Kinetics, CoexistencePartialsMatchFiniteDifferences) {
  ModelParams p = competition(3, 2, 2, 1, 1, 2);
  const auto c = coexistence_state(p);
  const Kinetics k = kinetics(p, c.u, c.v);
  EXPECT_NEAR(k.f, 0, 1e-15);
  EXPECT_NEAR(k.g, 0, 1e-15);
  EXPECT_NEAR(k.fu, -p.b1 * c.u, 1e-14);
  EXPECT_NEAR(k.fv, -p.c1 * c.u, 1e-14);
  EXPECT_NEAR(k.gu, -p.b2 * c.v, 1e-14);
  EXPECT_NEAR(k.gv, -p.c2 * c.v, 1e-14);
  const double h = 1e-6;
  auto rel = [](double a, double b) { return std::abs(a - b) / std::abs(b); };
  const Kinetics up = kinetics(p, c.u + h, c.v), um = kinetics(p, c.u - h, c.v);
  const Kinetics vp = kinetics(p, c.u, c.v + h), vm = kinetics(p, c.u, c.v - h);
  EXPECT_LE(rel((up.f - um.f) / (2 * h), k.fu), 1e-6);
  EXPECT_LE(rel((up.g - um.g) / (2 * h), k.gu), 1e-6);
  EXPECT_LE(rel((vp.f - vm.f) / (2 * h), k.fv), 1e-6);
  EXPECT_LE(rel((vp.g - vm.g) / (2 * h), k.gv), 1e-6);
}

TEST(Sensitivity, Examples) {
  SensitivitySpec one;
  const auto a = sensitivity_eval(one, 2.5);
  EXPECT_EQ(a.phi, 1);
  EXPECT_EQ(a.dphi, 0);
  EXPECT_EQ(a.ddphi, 0);
  EXPECT_EQ(a.Phi, 2.5);
  SensitivitySpec lin{{1, 1, 0, 0}};
  const auto b = sensitivity_eval(lin, 2);
  EXPECT_EQ(b.phi, 3);
  EXPECT_EQ(b.dphi, 1);
  EXPECT_EQ(b.ddphi, 0);
  EXPECT_EQ(b.Phi, 4);
}

TEST(Sensitivity, AntiderivativeMatchesFiniteDifference) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> C(-1, 1), V(0, 3);
  for (int i = 0; i < 100; ++i) {
    SensitivitySpec s{{1 + C(rng), C(rng), C(rng), C(rng)}};
    const double v = V(rng), h = 1e-5;
    const double fd = (sensitivity_eval(s, v + h).Phi - sensitivity_eval(s, v - h).Phi) / (2 * h);
    EXPECT_NEAR(fd, phi(s, v), 1e-8);
    const double fd1 = (phi(s, v + h) - phi(s, v - h)) / (2 * h);
    EXPECT_NEAR(fd1, sensitivity_eval(s, v).dphi, 1e-8);
  }
}

TEST(ModelParams, ValidateRejectsBadValues) {
  ModelParams p;
  p.D1 = 0;
  EXPECT_THROW(p.validate(), Error);
  p = ModelParams{};
  p.tau = -1;
  EXPECT_THROW(p.validate(), Error);
  p = ModelParams{};
  p.L = 0;
  EXPECT_THROW(p.validate(), Error);
  EXPECT_NO_THROW(ModelParams{}.validate());
}
