#pragma once

#include "chemotax/grid.hpp"
#include "chemotax/model.hpp"
#include "chemotax/steady.hpp"

#include <Eigen/SparseCore>
#include <complex>
#include <string>
#include <utility>
#include <vector>

namespace chemotax {

// Shadow system: eps v'' + f(v, lambda) = 0 on (0, L), Neumann, with
//   f(v, l) = (a2 - b2 l e^{-r Phi(v)} - c2 v) v,
//   int_0^L g(v, lambda) dx = 0,  g(v, l) = (a1 - b1 l e^{-r Phi(v)} - c1 v) e^{-r Phi(v)}.
struct ShadowParams {
  double a1 = 2, a2 = 1, b1 = 0, b2 = 1, c1 = 3, c2 = 1;
  double r = 6;
  double eps = 0.1;
  double L = 3.14159265358979323846;
  SensitivitySpec sensitivity;

  void validate() const;
  static ShadowParams from_model(const ModelParams& p, double r);
};

struct ShadowPartials {
  double f, fv, fvv, fvvv, fl, fvl;
  double g, gv, gvv, gl;
};

ShadowPartials shadow_partials(const ShadowParams& sp, double v, double lambda);

struct ShadowState {
  Grid1D grid;
  Field v;
  double lambda = 0;
  double eps = 0;
};

// (vbar, lambda_bar) with lambda_bar = ubar e^{r Phi(vbar)}.
std::pair<double, double> shadow_equilibrium(const ShadowParams& sp);
ShadowState shadow_constant_state(const ShadowParams& sp, const Grid1D& g);

double epsilon_n(const ShadowParams& sp, int n);
// Same formula with the discrete Neumann eigenvalue of the grid.
double epsilon_n_h(const ShadowParams& sp, int n, const Grid1D& g);

struct ShadowResidual {
  Field r;
  double constraint = 0;
  double roundoff = 0;
  double floor = 0;  // rounding of the stored state, see StationaryEval
  double norm() const;
};

ShadowResidual shadow_residual(const ShadowState& s, const ShadowParams& sp);
// Unknowns (v_0..v_{n-1}, lambda); last row is the integral constraint.
Eigen::SparseMatrix<double> shadow_jacobian(const ShadowState& s, const ShadowParams& sp);

// Leading m finite eigenvalues (by real part) of the constrained linearization
// psi_t = eps psi'' + f_v psi + f_l mu, 0 = int (g_v psi + g_l mu), found by
// eliminating the algebraic row.
std::vector<std::complex<double>> shadow_linearization_spectrum(const ShadowState& s,
                                                                const ShadowParams& sp, int m);
// Same pencil through the QZ algorithm, infinite eigenvalues dropped. Small n only.
std::vector<std::complex<double>> shadow_spectrum_qz(const ShadowState& s, const ShadowParams& sp);
// Eigenvalue of the pencil nearest to shift, by shift-invert iteration on the sparse system.
double shadow_eigenvalue_nearest(const ShadowState& s, const ShadowParams& sp, double shift);

struct ShadowK2 {
  int n = 0;
  double K2 = 0;
  double vbar = 0, lambda_bar = 0, eps_n = 0;
  ShadowPartials partials{};
  // Specialized path (Phi(v) = v, b1 = 0).
  bool specialized = false;
  double theta = 0, alpha = 0, beta = 0, gamma = 0, theta1 = 0, theta2 = 0, F = 0;
  double K2_as_printed = 0;
  std::string case_tag;  // "i", "ii", "iii", "iv"
  int table_sign = 0;    // sign listed for this (r, theta)
};

ShadowK2 shadow_K2(const ShadowParams& sp, int n);

ShadowState shadow_newton(const ShadowParams& sp, const ShadowState& guess, double tol = 1e-10,
                          NewtonReport* report = nullptr, int max_iter = 50);

struct ShadowBranchPoint {
  double eps = 0;
  ShadowState state;
  double amplitude = 0;
  bool stable = false;
  double residual = 0;
  double leading_eig = 0;
};

struct ShadowBranch {
  int n = 0;
  double eps_onset = 0, eps_onset_h = 0;
  std::vector<ShadowBranchPoint> points;
  std::vector<int> folds;
  std::string termination;
};

struct ShadowBranchOptions {
  int nodes = 129;
  int max_points = 200;
  int direction = 1;
  bool stability = true;
  double ds_max_factor = 4;
};

ShadowBranch shadow_branch(const ShadowParams& sp, int n, std::pair<double, double> eps_span, double ds,
                           const ShadowBranchOptions& opt = {});

// eps - eps_onset_h = K1 a + K2 a^2 + K3 a^3 + K4 a^4 over points with |a| <= a_max.
PitchforkFit fit_shadow_pitchfork(const ShadowBranch& b, double a_max, int min_points = 6);
PitchforkFit fit_shadow_pitchfork(const ShadowBranch& up, const ShadowBranch& down, double a_max,
                                  int min_points = 6);

}  // namespace chemotax
