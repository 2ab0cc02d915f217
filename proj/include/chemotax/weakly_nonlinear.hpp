#pragma once

#include "chemotax/model.hpp"

#include <string>

namespace chemotax {

enum class AsymptoticSign { Positive, Negative, Indeterminate };
const char* to_string(AsymptoticSign s);

struct WeaklyNonlinearReport {
  int k = 0;
  double chi_k = 0, Q_k = 0;
  double K1 = 0;
  double K2 = 0;
  // Same assembly with the coefficient block taken literally; kept for comparison.
  double K2_as_printed = 0;
  double B0 = 0, B1 = 0, B2 = 0, B3 = 0, B4 = 0;
  double I_phi1 = 0, I_psi1 = 0, I_phi1_cos2k = 0, I_psi1_cos2k = 0;
  double detA = 0, detA1 = 0, detA2 = 0;
  AsymptoticSign asymptotic_sign = AsymptoticSign::Indeterminate;
  // Large-diffusion case split. When phi'/phi = c2/(b2 ubar) the sign is decided
  // by phi''/phi against 2 c2^2 / (b2^2 ubar^m); both exponents m = 1, 2 are
  // evaluated and a disagreement is flagged.
  bool degenerate_slope_case = false;
  AsymptoticSign sign_with_ubar = AsymptoticSign::Indeterminate;
  AsymptoticSign sign_with_ubar_sq = AsymptoticSign::Indeterminate;
  bool exponent_disagreement = false;
};

// The s^2 coefficient of chi along the mode-k branch, chi = chi_k + K2 s^2 + ...
WeaklyNonlinearReport weakly_nonlinear(const ModelParams& p, int k);

}  // namespace chemotax
