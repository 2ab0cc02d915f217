#include "chemotax/shadow_limit.hpp"

#include "chemotax/error.hpp"
#include "chemotax/simulator.hpp"
#include "chemotax/steady.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <random>

namespace chemotax {

namespace {

ShadowLimitRow run_case(ModelParams p, double r, double D1, const ShadowLimitOptions& opt, std::uint64_t seed) {
  ShadowLimitRow row;
  row.D1 = D1;
  p.D1 = D1;
  p.chi = r * D1;
  row.chi = p.chi;
  try {
    p.validate();
    Grid1D g(opt.n, p.L);
    auto [ub, vb] = coexistence_state(p);
    State init = branch_switch(p, 1, opt.amplitude, g);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(-1, 1);
    for (int j = 0; j < g.n; ++j) {
      init.u[j] = std::max(init.u[j] + opt.noise * ub * U(rng), 0.0);
      init.v[j] = std::max(init.v[j] + opt.noise * vb * U(rng), 0.0);
    }

    SimOptions so;
    so.stop_residual = opt.stop_residual;
    SimResult sim = simulate(p, init, opt.t_end, opt.dt, opt.snapshot_every, {1}, so);
    row.t_relaxed = sim.final.t;
    row.worst_v_margin = sim.worst_v_margin;
    row.worst_mass_margin = sim.worst_mass_margin;
    row.worst_positivity = sim.worst_positivity;

    NewtonReport nr;
    State s = newton_solve(sim.final, p, 1e-10, &nr);
    row.residual = nr.residual;
    row.relaxed = true;

    Field w(g.n);
    for (int j = 0; j < g.n; ++j) w[j] = s.u[j] * std::exp(r * sensitivity_eval(p.sensitivity, s.v[j]).Phi);
    row.mean_w = integrate(w, g) / p.L;
    row.osc_w = (w.maxCoeff() - w.minCoeff()) / row.mean_w;
    row.v_osc = s.v.maxCoeff() - s.v.minCoeff();

    ShadowParams sp = ShadowParams::from_model(p, r);
    ShadowState guess{g, s.v, row.mean_w, sp.eps};
    try {
      ShadowState sh = shadow_newton(sp, guess, 1e-10);
      row.shadow_converged = true;
      row.lambda_shadow = sh.lambda;
      row.v_distance = (s.v - sh.v).lpNorm<Eigen::Infinity>();
    } catch (const Error& e) {
      row.error = e.what();
    }
  } catch (const Error& e) {
    row.error = e.what();
  }
  return row;
}

}  // namespace

ShadowLimitTable shadow_limit_check(const ModelParams& templ, double r, const std::vector<double>& D1_list,
                                    const ShadowLimitOptions& opt) {
  if (D1_list.size() < 3) throw Error(ErrorKind::InvalidArgument, "need at least three D1 values");
  for (std::size_t i = 1; i < D1_list.size(); ++i)
    if (!(D1_list[i] > D1_list[i - 1])) throw Error(ErrorKind::InvalidArgument, "D1 list must increase");

  ShadowLimitTable tab;
  tab.r = r;
  std::vector<std::future<ShadowLimitRow>> jobs;
  for (std::size_t i = 0; i < D1_list.size(); ++i)
    jobs.push_back(std::async(std::launch::async, run_case, templ, r, D1_list[i], opt, opt.seed + i));
  for (auto& j : jobs) tab.rows.push_back(j.get());

  tab.strictly_decreasing = true;
  for (std::size_t i = 0; i < tab.rows.size(); ++i) {
    if (!tab.rows[i].relaxed) tab.strictly_decreasing = false;
    if (i > 0 && !(tab.rows[i].osc_w < tab.rows[i - 1].osc_w)) tab.strictly_decreasing = false;
  }
  return tab;
}

}  // namespace chemotax
