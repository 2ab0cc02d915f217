#pragma once

#include "chemotax/discrete.hpp"

#include <string>
#include <vector>

namespace chemotax {

// One first-order IMEX step. Diffusion is backward Euler. The advection flux is
// linear in u once v is frozen at the old level, so it is taken implicitly
// together with D1 u''. Reactions are explicit. tau = 0 solves the v equation
// as an elliptic problem with the new u.
State step(const State& s, const ModelParams& p, double dt);

struct SimDiagnostics {
  double t = 0;
  double mass_u = 0;
  double sup_v = 0;
  double min_u = 0, min_v = 0;
  double residual = 0;
  std::vector<double> amplitudes;
};

struct InvariantBounds {
  double v_max = 0;
  double mass_max = 0;  // +inf when b1 = 0
  double positivity = -1e-10;
};

InvariantBounds invariant_bounds(const State& init, const ModelParams& p);
// Empty when all monitors hold.
std::vector<std::string> check_invariants(const State& s, const InvariantBounds& b);

struct SimOptions {
  bool store_snapshots = false;
  int max_halvings = 20;
  // Stop once the steady residual drops below this at a snapshot (0 disables).
  double stop_residual = 0;
};

struct SimResult {
  State final;
  std::vector<SimDiagnostics> diagnostics;
  std::vector<State> snapshots;
  InvariantBounds bounds;
  int rejected_steps = 0;
  // Largest excess over each bound seen across snapshots (negative is slack).
  double worst_v_margin = -1e300, worst_mass_margin = -1e300, worst_positivity = 1e300;
};

SimDiagnostics diagnose(const State& s, const ModelParams& p, const std::vector<int>& modes);

SimResult simulate(const ModelParams& p, const State& init, double t_end, double dt,
                   double snapshot_every, const std::vector<int>& modes,
                   const SimOptions& opt = {});

// Least-squares slope of log|amplitude| against t over [t0, t1].
double fitted_growth_rate(const std::vector<SimDiagnostics>& d, int mode_slot, double t0,
                          double t1);

}  // namespace chemotax
