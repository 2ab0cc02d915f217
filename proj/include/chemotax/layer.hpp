#pragma once

#include "chemotax/shadow.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace chemotax {

// Layer operations use Phi(v) = v and b1 = 0; f(l, v) = (a2 - b2 l e^{-r v} - c2 v) v.
double bistable_f(const ShadowParams& sp, double lambda, double v);
// V-antiderivative of f with F(l, 0) = 0.
double bistable_F(const ShadowParams& sp, double lambda, double v);

struct BistableStructure {
  double lambda = 0;
  double v_bar1 = 0, v_bar2 = 0;
  double v_star = 0;
  std::pair<double, double> lambda_window{0, 0};
};

std::pair<double, double> bistable_window(const ShadowParams& sp);
BistableStructure bistable_roots(double lambda, const ShadowParams& sp);

// lambda* in the window with int_0^{v_bar2} f(lambda*, s) ds = 0.
double equal_area_lambda(const ShadowParams& sp);

struct HeteroclinicProfile {
  double lambda = 0;  // the equal-area lambda*
  double v_bar2 = 0;
  double kappa = 0;   // sqrt(-f_v(lambda*, 0))
  double kappa_fit = 0;
  double hamiltonian_drift = 0;  // max |H - H(start)| over integrated steps
  double z_span = 0;
  std::vector<double> z, V, dV;
  // Integrated trajectory, already translated so that V(0) = v_bar2 / 2.
  std::vector<double> z_raw, V_raw, dV_raw;

  double operator()(double z) const;  // interpolated, flat/exponential outside
};

// z_span <= 0 selects 40 / kappa.
HeteroclinicProfile heteroclinic_profile(const ShadowParams& sp, double z_span = 0, int nz = 2001);

struct LayerPrediction {
  double x0 = 0;
  double lambda0 = 0;
  double r_star = 0;
  double v_bar2_double_star = 0;
  std::pair<double, double> I0{0, 0};
};

double r_star(const ShadowParams& sp);
double predicted_interface(double v_bar2, const ShadowParams& sp);
LayerPrediction layer_predict(double v_bar2, const ShadowParams& sp);

struct LayerReport {
  double v_bar2_target = 0;
  double eps = 0;
  double lambda_eps = 0;
  double lambda0 = 0;
  double lambda_star = 0;
  double x0_predicted = 0;
  double x0_measured = 0;  // NaN when v never crosses v_bar2/2
  double interface_error = 0;
  double r_star = 0;
  double v_bar2_double_star = 0;
  std::pair<double, double> I0{0, 0};
  double v_min = 0, v_max = 0;
  double plateau_high_error = 0, plateau_low_error = 0;
  bool converged = false;
  int iterations = 0;
  double residual = 0;
  std::string message;
};

struct LayerOptions {
  int nodes = 0;  // 0 selects max(1025, 16 L / sqrt(eps))
};

struct LayerOutcome {
  ShadowState ansatz;
  std::optional<ShadowState> solution;
  LayerReport report;
};

LayerOutcome layer_solve(const ShadowParams& sp, double v_bar2, const LayerOptions& opt = {});

// First downward crossing of level by linear interpolation; NaN if none.
double level_crossing(const Field& v, const Grid1D& g, double level);

}  // namespace chemotax
