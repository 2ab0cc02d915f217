#include "chemotax/weakly_nonlinear.hpp"

#include "chemotax/error.hpp"
#include "chemotax/stability.hpp"

#include <cmath>
#include <numbers>

namespace chemotax {

const char* to_string(AsymptoticSign s) {
  switch (s) {
    case AsymptoticSign::Positive: return "Positive";
    case AsymptoticSign::Negative: return "Negative";
    default: return "Indeterminate";
  }
}

namespace {

struct Coeffs {
  double B0, B1, B2, B3, B4;
};

Coeffs coefficient_block(double D1, double Lam, double L, double ub, double vb, double Q,
                         double b1, double b2, double c1, double c2, double ph, double dph,
                         double ddph, bool literal) {
  Coeffs c{};
  const double sB0 = literal ? -1.0 : 1.0;
  c.B0 = sB0 * L / 16 * (2 * dph * Q + ub * ddph) * (Q / (ub * ph) * Lam * D1 + (b1 * Q + c1) / ph);
  c.B1 = (Q / (2 * ub) + 1 / (2 * vb)) * Lam * D1 - b1 * Q / 2 + b1 * ub / (2 * vb);
  c.B2 = (dph * Q / (2 * ph) + (b2 * Q + 2 * c2) / (2 * b2 * vb)) * Lam * D1 - c1 * Q / 2 +
         ub * dph * (b1 * Q + c1) / (2 * ph) + b1 * ub * (b2 * Q + 2 * c2) / (2 * b2 * vb);
  c.B3 = (1 / (2 * vb) - Q / (2 * ub)) * Lam * D1 - (3 * b1 * Q + 2 * c1) / 2 + b1 * ub / (2 * vb);
  c.B4 = ((ub * dph + 2 * ph * Q) / (2 * ub * ph) * Q + (b2 * Q + 2 * c2) / (2 * b2 * vb)) * Lam * D1 +
         b1 * ub / (2 * b2 * vb) * (b2 * Q + 2 * c2) + (ub * dph + 2 * ph * Q) * (b1 * Q + c1) / (2 * ph);
  if (!literal) c.B4 -= c1 * Q / 2;
  return c;
}

}  // namespace

WeaklyNonlinearReport weakly_nonlinear(const ModelParams& p, int k) {
  const auto bp = chi_k(p, k);
  if (!bp.feasible) throw Error(ErrorKind::NoBifurcation, "chi_k is not positive for this k");
  const Point2 e = coexistence_state(p);
  const double ub = e.u, vb = e.v;
  const auto sv = sensitivity_eval(p.sensitivity, vb);
  const double ph = sv.phi, dph = sv.dphi, ddph = sv.ddphi;
  const double L = p.L, D1 = p.D1, D2 = p.D2;
  const double b1 = p.b1, b2 = p.b2, c1 = p.c1, c2 = p.c2;
  const double den = b1 * c2 - b2 * c1;
  const double kp = k * std::numbers::pi;
  const double Lam = neumann_eigenvalue(k, L), Lam2 = 4 * Lam;

  const double lhs = 4 * D1 * D2 * Lam * Lam, rhs = den * ub * vb;
  if (std::abs(lhs - rhs) <= 1e-12 * std::max(std::abs(lhs), std::abs(rhs)))
    throw Error(ErrorKind::ResonanceError, "modes k and 2k bifurcate at the same chi");

  WeaklyNonlinearReport r;
  r.k = k;
  r.chi_k = bp.chi_k;
  r.Q_k = bp.Q_k;
  const double chik = bp.chi_k, Q = bp.Q_k;

  r.I_phi1 = (c1 * ub * L * (b2 * Q + c2) - c2 * vb * L * (b1 * Q * Q + c1 * Q)) / (2 * ub * vb * den);
  r.I_psi1 = (b2 * vb * L * (b1 * Q * Q + c1 * Q) - b1 * ub * L * (b2 * Q + c2)) / (2 * ub * vb * den);

  r.detA = (D1 * Lam2 + b1 * ub) * (D2 * Lam2 + c2 * vb) - b2 * ub * vb * (chik * ph * Lam2 + c1);
  const double common = 2 * chik * kp * kp * (ub * dph + Q * ph);
  // Cramer's rule on the cos(2k) projections of the second-order problem.
  r.detA1 = -(common + L * L * (b1 * Q * Q + c1 * Q)) * (D2 * Lam2 + c2 * vb) / (4 * L) +
            L * (b2 * Q + c2) * (chik * ub * ph * Lam2 + c1 * ub) / 4;
  r.detA2 = b2 * vb * (common + L * L * (b1 * Q * Q + c1 * Q)) / (4 * L) -
            L * (b2 * Q + c2) * (D1 * Lam2 + b1 * ub) / 4;
  r.I_phi1_cos2k = r.detA1 / r.detA;
  r.I_psi1_cos2k = r.detA2 / r.detA;

  const double scale = 2 * L / (k * k * std::numbers::pi * std::numbers::pi * ph * ub);
  const Coeffs c = coefficient_block(D1, Lam, L, ub, vb, Q, b1, b2, c1, c2, ph, dph, ddph, false);
  r.B0 = c.B0;
  r.B1 = c.B1;
  r.B2 = c.B2;
  r.B3 = c.B3;
  r.B4 = c.B4;
  r.K2 = scale * (c.B0 + c.B1 * r.I_phi1 + c.B2 * r.I_psi1 + c.B3 * r.I_phi1_cos2k +
                  c.B4 * r.I_psi1_cos2k);

  {
    const Coeffs lit = coefficient_block(D1, Lam, L, ub, vb, Q, b1, b2, c1, c2, ph, dph, ddph, true);
    const double A1 = (common + L * L * (b1 * Q * Q + c1 * Q)) * (D2 * Lam2 + c2 * vb) / (4 * L) +
                      L * (b2 * Q + c2) * (chik * ub * ph * Lam2 + c1 * ub) / 4;
    const double A2 = b2 * vb * (common + L * L * (b1 * Q * Q + c1)) / (4 * L) -
                      L * (b2 * Q + c2) * (D1 * Lam2 + b1 * ub) / 4;
    r.K2_as_printed = scale * (lit.B0 + lit.B1 * r.I_phi1 + lit.B2 * r.I_psi1 +
                               lit.B3 * A1 / r.detA + lit.B4 * A2 / r.detA);
  }
  r.K1 = 0;

  if (std::min(D1, 1 / D2) >= 100) {
    const double slope = dph / ph - c2 / (b2 * ub);
    if (std::abs(slope) <= 1e-10 * (std::abs(c2 / (b2 * ub)) + 1)) {
      r.degenerate_slope_case = true;
      const double curv = ddph / ph;
      auto pick = [&](double thr) {
        if (curv > thr) return AsymptoticSign::Positive;
        if (curv < thr) return AsymptoticSign::Negative;
        return AsymptoticSign::Indeterminate;
      };
      r.sign_with_ubar = pick(2 * c2 * c2 / (b2 * b2 * ub));
      r.sign_with_ubar_sq = pick(2 * c2 * c2 / (b2 * b2 * ub * ub));
      r.exponent_disagreement = r.sign_with_ubar != r.sign_with_ubar_sq;
      r.asymptotic_sign = r.exponent_disagreement ? AsymptoticSign::Indeterminate : r.sign_with_ubar;
    } else {
      const double lhs2 = D1 * D2 * Lam * Lam, rhs2 = den * ub * vb / 4;
      if (lhs2 < rhs2) r.asymptotic_sign = AsymptoticSign::Positive;
      else if (lhs2 > rhs2) r.asymptotic_sign = AsymptoticSign::Negative;
    }
  }
  return r;
}

}  // namespace chemotax
