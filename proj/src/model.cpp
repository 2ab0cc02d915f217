#include "chemotax/model.hpp"

#include "chemotax/error.hpp"

#include <cmath>
#include <sstream>

namespace chemotax {

std::string_view to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::DivisionByZeroRatio: return "DivisionByZeroRatio";
    case ErrorKind::SingularDenominator: return "SingularDenominator";
    case ErrorKind::NoCoexistenceState: return "NoCoexistenceState";
    case ErrorKind::ZeroSensitivity: return "ZeroSensitivity";
    case ErrorKind::KZero: return "KZero";
    case ErrorKind::NoFeasibleMode: return "NoFeasibleMode";
    case ErrorKind::StepRejected: return "StepRejected";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
    case ErrorKind::NewtonDiverged: return "NewtonDiverged";
    case ErrorKind::SingularJacobian: return "SingularJacobian";
    case ErrorKind::BracketMiss: return "BracketMiss";
    case ErrorKind::ResonanceError: return "ResonanceError";
    case ErrorKind::NoBifurcation: return "NoBifurcation";
    case ErrorKind::NZero: return "NZero";
    case ErrorKind::OutsideWindow: return "OutsideWindow";
    case ErrorKind::NoEqualArea: return "NoEqualArea";
    case ErrorKind::OutsideI0: return "OutsideI0";
    case ErrorKind::RTooSmall: return "RTooSmall";
    case ErrorKind::UnknownKey: return "UnknownKey";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::UnknownKey:
    case ErrorKind::ParseError:
    case ErrorKind::InvalidArgument:
      return 2;
    case ErrorKind::InvariantViolation:
      return 4;
    default:
      return 3;
  }
}

SensitivityValues sensitivity_eval(const SensitivitySpec& s, double v) {
  const auto& p = s.p;
  SensitivityValues r{};
  r.phi = p[0] + v * (p[1] + v * (p[2] + v * p[3]));
  r.dphi = p[1] + v * (2 * p[2] + v * 3 * p[3]);
  r.ddphi = 2 * p[2] + 6 * p[3] * v;
  r.Phi = v * (p[0] + v * (p[1] / 2 + v * (p[2] / 3 + v * p[3] / 4)));
  return r;
}

void ModelParams::validate() const {
  std::ostringstream msg;
  if (!(D1 > 0) || !(D2 > 0)) msg << "D1, D2 must be > 0; ";
  if (!(L > 0)) msg << "L must be > 0; ";
  if (!(tau >= 0)) msg << "tau must be >= 0; ";
  for (double x : {a1, a2, b1, b2, c1, c2})
    if (!(x >= 0)) {
      msg << "kinetic constants must be >= 0; ";
      break;
    }
  if (!std::isfinite(chi)) msg << "chi must be finite; ";
  if (!msg.str().empty()) throw Error(ErrorKind::InvalidArgument, msg.str());
}

const char* to_string(CompetitionRegime r) {
  switch (r) {
    case CompetitionRegime::Weak: return "Weak";
    case CompetitionRegime::Strong: return "Strong";
    default: return "Degenerate";
  }
}

CompetitionRegime classify_competition(const ModelParams& p) {
  if (p.a2 == 0 || p.b2 == 0 || p.c2 == 0)
    throw Error(ErrorKind::DivisionByZeroRatio, "a2, b2 and c2 must be nonzero");
  const double ra = p.a1 / p.a2, rb = p.b1 / p.b2, rc = p.c1 / p.c2;
  if (rc < ra && ra < rb) return CompetitionRegime::Weak;
  if (rb < ra && ra < rc) return CompetitionRegime::Strong;
  return CompetitionRegime::Degenerate;
}

EquilibriumSet equilibria(const ModelParams& p) {
  EquilibriumSet e;
  if (p.b1 > 0) e.semitrivial_u = Point2{p.a1 / p.b1, 0.0};
  if (p.c2 > 0) e.semitrivial_v = Point2{0.0, p.a2 / p.c2};
  const double den = p.b1 * p.c2 - p.b2 * p.c1;
  if (den == 0) throw Error(ErrorKind::SingularDenominator, "b1*c2 == b2*c1");
  e.coexistence = Point2{(p.a1 * p.c2 - p.a2 * p.c1) / den, (p.a2 * p.b1 - p.a1 * p.b2) / den};
  return e;
}

Point2 coexistence_state(const ModelParams& p) {
  const auto e = equilibria(p);
  const Point2 c = *e.coexistence;
  if (!(c.u > 0 && c.v > 0)) {
    std::ostringstream s;
    s << "coexistence state (" << c.u << ", " << c.v << ") is not positive";
    throw Error(ErrorKind::NoCoexistenceState, s.str());
  }
  return c;
}

Kinetics kinetics(const ModelParams& p, double u, double v) {
  Kinetics k{};
  const double ru = p.a1 - p.b1 * u - p.c1 * v;
  const double rv = p.a2 - p.b2 * u - p.c2 * v;
  k.f = ru * u;
  k.g = rv * v;
  k.fu = ru - p.b1 * u;
  k.fv = -p.c1 * u;
  k.gu = -p.b2 * v;
  k.gv = rv - p.c2 * v;
  return k;
}

}  // namespace chemotax
