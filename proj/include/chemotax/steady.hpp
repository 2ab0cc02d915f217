#pragma once

#include "chemotax/discrete.hpp"

#include <Eigen/Core>
#include <string>
#include <utility>
#include <vector>

namespace chemotax {

struct NewtonReport {
  int iterations = 0;
  double residual = 0;
  double roundoff = 0;
};

// Damped Newton on the stationary residual (step halving, at most 8).
// Converges when the max-norm residual is below tol, or below the rounding
// level of the residual evaluation when that is larger.
State newton_solve(const State& guess, const ModelParams& p, double tol = 1e-12,
                   NewtonReport* report = nullptr, int max_iter = 50);

// (ubar, vbar) + s (Q_k, 1) cos(k pi x / L). Q_k from the grid's own
// Neumann eigenvalue so the ansatz is the exact discrete null vector.
State branch_switch(const ModelParams& p, int k, double s, const Grid1D& g);

// Max real part of the spectrum of the stationary linearization with time
// weights diag(1, tau).
double leading_real_part(const State& s, const ModelParams& p);
Eigen::VectorXcd linearization_spectrum(const State& s, const ModelParams& p);

struct BranchPoint {
  double chi = 0;
  State state;
  double amplitude = 0;
  bool stable = false;
  double residual = 0;
  double leading_eig = 0;
};

struct Branch {
  int k = 0;
  double chi_onset = 0;    // continuous chi_k
  double chi_onset_h = 0;  // onset of the discrete problem
  std::vector<BranchPoint> points;
  std::vector<int> folds;  // indices where dchi/ds changes sign
  std::string termination;
};

struct ContinueOptions {
  int n = 129;
  int max_points = 500;
  int direction = 1;
  bool stability = true;
  double ds_max_factor = 4;
  int max_folds = 4;
};

Branch continue_branch(const ModelParams& p, int k, std::pair<double, double> chi_span, double ds,
                       const ContinueOptions& opt = {});

struct PitchforkFit {
  double K1 = 0, K2 = 0;
  int used = 0;
};

// Least squares y = K1 a + K2 a^2 + K3 a^3 + K4 a^4 over (a, y) samples.
PitchforkFit fit_pitchfork(const std::vector<std::pair<double, double>>& samples, int min_points = 6);
// chi - chi_onset_h over the leading points with |a| <= a_max.
PitchforkFit fit_pitchfork(const Branch& b, double a_max, int min_points = 6);
// Both halves of the pitchfork at once; the odd terms then cancel to rounding.
PitchforkFit fit_pitchfork(const Branch& up, const Branch& down, double a_max, int min_points = 6);

}  // namespace chemotax
