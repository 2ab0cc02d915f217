#pragma once

#include <array>
#include <optional>

namespace chemotax {

// phi(v) = p0 + p1 v + p2 v^2 + p3 v^3, Phi its antiderivative with Phi(0) = 0.
struct SensitivitySpec {
  std::array<double, 4> p{1.0, 0.0, 0.0, 0.0};

  bool is_unit() const { return p[0] == 1.0 && p[1] == 0.0 && p[2] == 0.0 && p[3] == 0.0; }
};

struct SensitivityValues {
  double phi, dphi, ddphi, Phi;
};

SensitivityValues sensitivity_eval(const SensitivitySpec& s, double v);
inline double phi(const SensitivitySpec& s, double v) {
  return s.p[0] + v * (s.p[1] + v * (s.p[2] + v * s.p[3]));
}

struct ModelParams {
  double a1 = 3, a2 = 2;
  double b1 = 2, b2 = 1;
  double c1 = 1, c2 = 2;
  double D1 = 1, D2 = 1;
  double chi = 0;
  double tau = 1;
  double L = 3.14159265358979323846;
  SensitivitySpec sensitivity;

  void validate() const;
};

enum class CompetitionRegime { Weak, Strong, Degenerate };
const char* to_string(CompetitionRegime r);

CompetitionRegime classify_competition(const ModelParams& p);

struct Point2 {
  double u, v;
};

struct EquilibriumSet {
  Point2 trivial{0, 0};
  std::optional<Point2> semitrivial_u;
  std::optional<Point2> semitrivial_v;
  std::optional<Point2> coexistence;
};

EquilibriumSet equilibria(const ModelParams& p);

// Positive coexistence state or NoCoexistenceState / SingularDenominator.
Point2 coexistence_state(const ModelParams& p);

struct Kinetics {
  double f, g, fu, fv, gu, gv;
};

Kinetics kinetics(const ModelParams& p, double u, double v);

}  // namespace chemotax
