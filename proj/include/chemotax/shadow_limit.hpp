#pragma once

#include "chemotax/model.hpp"
#include "chemotax/shadow.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace chemotax {

struct ShadowLimitRow {
  double D1 = 0, chi = 0;
  double osc_w = 0;        // (max w - min w) / mean w, w = u e^{r Phi(v)}
  double mean_w = 0;
  double v_distance = 0;   // max |v - v_shadow|
  double lambda_shadow = 0;
  double v_osc = 0;        // max v - min v of the relaxed state
  double residual = 0;
  double t_relaxed = 0;
  bool relaxed = false;  // simulation plus Newton polish succeeded
  bool shadow_converged = false;
  double worst_v_margin = 0, worst_mass_margin = 0, worst_positivity = 0;
  std::string error;
};

struct ShadowLimitTable {
  double r = 0;
  std::vector<ShadowLimitRow> rows;
  bool strictly_decreasing = false;
};

struct ShadowLimitOptions {
  int n = 257;
  double dt = 1e-2;
  double t_end = 2000;
  double snapshot_every = 5;
  double stop_residual = 1e-7;
  double amplitude = 0.05;  // mode-1 seed on top of the coexistence state
  double noise = 1e-4;
  std::uint64_t seed = 1;
};

// Relaxes the full system for each D1 with chi = r D1, then compares with the
// shadow problem. Cases run concurrently; each owns its own record.
ShadowLimitTable shadow_limit_check(const ModelParams& templ, double r, const std::vector<double>& D1_list,
                                    const ShadowLimitOptions& opt = {});

}  // namespace chemotax
