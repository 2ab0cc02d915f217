#include "chemotax/commands.hpp"

#include "chemotax/acceptance.hpp"
#include "chemotax/config.hpp"
#include "chemotax/error.hpp"
#include "chemotax/layer.hpp"
#include "chemotax/output.hpp"
#include "chemotax/shadow.hpp"
#include "chemotax/shadow_limit.hpp"
#include "chemotax/simulator.hpp"
#include "chemotax/stability.hpp"
#include "chemotax/steady.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <ostream>
#include <random>

namespace chemotax {

namespace {

struct Run {
  RunConfig cfg;
  Manifest man;
  std::vector<std::pair<std::string, std::string>> files;
  int verdict = 0;  // 1 when a verify command's check fails
  std::ostream* log = nullptr;

  void emit(const std::string& name, const Csv& csv) { files.emplace_back(name, csv.text()); }
  void result(const std::string& k, double v) { man.results.emplace_back(k, v); }
};

double l2(const Field& f, const Grid1D& g) { return std::sqrt(integrate(f.cwiseProduct(f), g)); }

std::string stable_cell(bool s) { return s ? "1" : "0"; }

void cmd_equilibria(Run& r) {
  const ModelParams& p = r.cfg.model;
  p.validate();
  const auto e = equilibria(p);
  Csv csv({"state", "u", "v"});
  csv.raw({"trivial", format_double(e.trivial.u), format_double(e.trivial.v)});
  if (e.semitrivial_u) csv.raw({"semitrivial_u", format_double(e.semitrivial_u->u), format_double(e.semitrivial_u->v)});
  if (e.semitrivial_v) csv.raw({"semitrivial_v", format_double(e.semitrivial_v->u), format_double(e.semitrivial_v->v)});
  if (e.coexistence) csv.raw({"coexistence", format_double(e.coexistence->u), format_double(e.coexistence->v)});
  r.emit("equilibria.csv", csv);
  r.man.warnings.push_back(std::string("competition regime: ") + to_string(classify_competition(p)));
}

void cmd_stability(Run& r) {
  const ModelParams& p = r.cfg.model;
  p.validate();
  const int kmax = r.cfg.stability.k_max;
  if (kmax < 1) throw Error(ErrorKind::InvalidArgument, "stability.k_max must be >= 1");
  Csv csv({"k", "chi_k", "re_lambda_plus", "re_lambda_minus"});
  for (int k = 1; k <= kmax; ++k) {
    const auto bp = chi_k(p, k);
    const auto [lp, lm] = growth_rate(p, k);
    const double hi = std::max(lp.real(), lm.real()), lo = std::min(lp.real(), lm.real());
    csv.row({double(k), bp.feasible ? bp.chi_k : std::nan(""), hi, lo});
  }
  r.emit("stability.csv", csv);
  try {
    const auto th = chi_threshold(p, kmax);
    r.result("chi0", th.chi0);
    r.result("k0", th.k0);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NoFeasibleMode) throw;
    r.man.warnings.push_back(e.what());
  }
}

void cmd_simulate(Run& r) {
  const ModelParams& p = r.cfg.model;
  p.validate();
  const auto& sc = r.cfg.simulate;
  const Grid1D g(r.cfg.grid_n, p.L);
  double u0 = sc.u0, v0 = sc.v0;
  if (std::isnan(u0) || std::isnan(v0)) {
    const Point2 c = coexistence_state(p);
    if (std::isnan(u0)) u0 = c.u;
    if (std::isnan(v0)) v0 = c.v;
  }
  State init = State::constant(g, u0, v0);
  // relative perturbation keeps the initial data nonnegative for small amplitudes
  const Field mode = cosine_mode(g, sc.mode);
  std::mt19937_64 rng(r.cfg.seed);
  std::uniform_real_distribution<double> U(-1, 1);
  for (int j = 0; j < g.n; ++j) {
    init.u[j] *= 1 + sc.amplitude * mode[j] + sc.noise * U(rng);
    init.v[j] *= 1 + sc.amplitude * mode[j] + sc.noise * U(rng);
  }
  SimOptions o;
  o.store_snapshots = true;
  const auto& tc = r.cfg.time;
  SimResult res = simulate(p, init, tc.t_end, tc.dt, tc.snapshot_every, sc.modes, o);

  Csv snaps({"t", "x", "u", "v"});
  const Field x = g.nodes();
  for (const State& s : res.snapshots)
    for (int j = 0; j < g.n; ++j) snaps.row({s.t, x[j], s.u[j], s.v[j]});
  std::vector<std::string> hdr{"t", "mass_u", "sup_v", "residual"};
  for (int k : sc.modes) hdr.push_back("amp_k" + std::to_string(k));
  Csv diag(hdr);
  for (const auto& d : res.diagnostics) {
    std::vector<double> row{d.t, d.mass_u, d.sup_v, d.residual};
    row.insert(row.end(), d.amplitudes.begin(), d.amplitudes.end());
    diag.row(row);
  }
  r.emit("snapshots.csv", snaps);
  r.emit("diagnostics.csv", diag);
  r.man.invariants = {{"v_max", res.worst_v_margin <= 0},
                      {"mass_u", res.worst_mass_margin <= 0},
                      {"positivity", res.worst_positivity >= res.bounds.positivity}};
  r.result("v_max_bound", res.bounds.v_max);
  r.result("mass_u_bound", res.bounds.mass_max);
  r.result("worst_v_margin", res.worst_v_margin);
  r.result("worst_mass_margin", res.worst_mass_margin);
  r.result("rejected_steps", res.rejected_steps);
  r.result("final_residual", res.diagnostics.back().residual);
}

void cmd_continue(Run& r) {
  const ModelParams& p = r.cfg.model;
  p.validate();
  const auto& cc = r.cfg.cont;
  const auto bp = chi_k(p, cc.k);
  if (!bp.feasible) throw Error(ErrorKind::NoBifurcation, "mode k has no feasible chi_k");
  const double lo = std::isnan(cc.chi_min) ? bp.chi_k - 0.5 * std::abs(bp.chi_k) : cc.chi_min;
  const double hi = std::isnan(cc.chi_max) ? bp.chi_k + 0.5 * std::abs(bp.chi_k) : cc.chi_max;
  ContinueOptions o;
  o.n = cc.n;
  o.max_points = cc.max_points;
  o.direction = cc.direction;
  o.stability = cc.stability;
  const Branch b = continue_branch(p, cc.k, {lo, hi}, cc.ds, o);
  Csv csv({"chi", "amplitude", "stable", "residual", "norm_u", "norm_v"});
  for (std::size_t i = 0; i < b.points.size(); ++i) {
    const auto& pt = b.points[i];
    const Grid1D& g = pt.state.grid;
    csv.raw({format_double(pt.chi), format_double(pt.amplitude), stable_cell(pt.stable), format_double(pt.residual),
             format_double(l2(pt.state.u, g)), format_double(l2(pt.state.v, g))});
    if (cc.profile_every > 0 && i % cc.profile_every == 0) {
      Csv prof({"x", "u", "v"});
      const Field x = g.nodes();
      for (int j = 0; j < g.n; ++j) prof.row({x[j], pt.state.u[j], pt.state.v[j]});
      char name[48];
      std::snprintf(name, sizeof name, "profile_%04zu.csv", i);
      r.emit(name, prof);
    }
  }
  r.emit("branch.csv", csv);
  r.result("chi_k", b.chi_onset);
  r.result("chi_k_discrete", b.chi_onset_h);
  r.result("points", double(b.points.size()));
  r.result("folds", double(b.folds.size()));
  r.man.warnings.push_back("termination: " + b.termination);
}

ShadowParams shadow_from(const RunConfig& c) {
  ShadowParams sp = ShadowParams::from_model(c.model, c.shadow.r);
  sp.eps = c.shadow.eps;
  sp.validate();
  return sp;
}

void cmd_shadow_branch(Run& r) {
  const ShadowParams sp = shadow_from(r.cfg);
  const auto& sc = r.cfg.shadow;
  const double en = epsilon_n(sp, sc.mode);
  const double lo = std::isnan(sc.eps_min) ? 0.5 * en : sc.eps_min;
  const double hi = std::isnan(sc.eps_max) ? 1.5 * en : sc.eps_max;
  ShadowBranchOptions o;
  o.nodes = sc.n;
  o.max_points = sc.max_points;
  o.direction = sc.direction;
  const ShadowBranch b = shadow_branch(sp, sc.mode, {lo, hi}, sc.ds, o);
  Csv csv({"eps", "amplitude", "stable", "residual", "norm_u", "norm_v"});
  for (const auto& pt : b.points) {
    const Grid1D& g = pt.state.grid;
    Field u(g.n);
    for (int j = 0; j < g.n; ++j)
      u[j] = pt.state.lambda * std::exp(-sp.r * sensitivity_eval(sp.sensitivity, pt.state.v[j]).Phi);
    csv.raw({format_double(pt.eps), format_double(pt.amplitude), stable_cell(pt.stable), format_double(pt.residual),
             format_double(l2(u, g)), format_double(l2(pt.state.v, g))});
  }
  r.emit("shadow_branch.csv", csv);
  const auto K = shadow_K2(sp, sc.mode);
  r.result("eps_n", en);
  r.result("eps_n_discrete", b.eps_onset_h);
  r.result("K2", K.K2);
  r.result("points", double(b.points.size()));
  r.man.warnings.push_back("termination: " + b.termination);
}

void cmd_layer(Run& r) {
  ShadowParams sp = shadow_from(r.cfg);
  const auto& lc = r.cfg.layer;
  sp.eps = lc.eps;
  const double v2 = std::isnan(lc.v_bar2) ? bistable_roots(equal_area_lambda(sp), sp).v_bar2 : lc.v_bar2;
  LayerOptions o;
  o.nodes = lc.n;
  const LayerOutcome out = layer_solve(sp, v2, o);
  const LayerReport& rep = out.report;
  if (!out.solution) throw Error(ErrorKind::NewtonDiverged, "layer solve failed: " + rep.message);
  const ShadowState& s = *out.solution;
  Csv csv({"x", "v"});
  const Field x = s.grid.nodes();
  for (int j = 0; j < s.grid.n; ++j) csv.row({x[j], s.v[j]});
  r.emit("layer.csv", csv);
  r.result("lambda_eps", rep.lambda_eps);
  r.result("x0_predicted", rep.x0_predicted);
  r.result("x0_measured", rep.x0_measured);
  r.result("eps", rep.eps);
  r.result("v_bar2", rep.v_bar2_target);
  r.result("lambda0", rep.lambda0);
  r.result("lambda_star", rep.lambda_star);
  r.result("interface_error", rep.interface_error);
  r.result("residual", rep.residual);
  if (!rep.message.empty()) r.man.warnings.push_back(rep.message);
}

void cmd_shadow_limit(Run& r) {
  r.cfg.model.validate();
  const auto& lc = r.cfg.limit;
  ShadowLimitOptions o;
  o.n = lc.n;
  o.dt = lc.dt;
  o.t_end = lc.t_end;
  o.stop_residual = lc.stop_residual;
  o.seed = r.cfg.seed;
  const auto tab = shadow_limit_check(r.cfg.model, lc.r, lc.D1_list, o);
  Csv csv({"D1", "chi", "osc_w", "mean_w", "v_distance", "lambda_shadow", "v_osc", "residual", "t_relaxed",
           "relaxed", "shadow_converged"});
  bool ok = tab.strictly_decreasing;
  bool v_ok = true, m_ok = true, pos_ok = true;
  for (const auto& row : tab.rows) {
    csv.raw({format_double(row.D1), format_double(row.chi), format_double(row.osc_w), format_double(row.mean_w),
             format_double(row.v_distance), format_double(row.lambda_shadow), format_double(row.v_osc),
             format_double(row.residual), format_double(row.t_relaxed), stable_cell(row.relaxed),
             stable_cell(row.shadow_converged)});
    ok = ok && row.relaxed && row.error.empty();
    v_ok = v_ok && row.worst_v_margin <= 0;
    m_ok = m_ok && row.worst_mass_margin <= 0;
    pos_ok = pos_ok && row.worst_positivity >= -1e-10;
    if (!row.error.empty()) r.man.warnings.push_back("D1=" + format_double(row.D1) + ": " + row.error);
  }
  r.emit("shadow_limit.csv", csv);
  r.man.invariants = {{"v_max", v_ok}, {"mass_u", m_ok}, {"positivity", pos_ok}};
  r.result("strictly_decreasing", tab.strictly_decreasing);
  if (!tab.rows.empty()) r.result("osc_w_last", tab.rows.back().osc_w);
  if (!ok) r.verdict = 1;
}

void cmd_verify_all(Run& r, bool seed_given) {
  AcceptanceContext ctx;
  if (seed_given) ctx.seed = r.cfg.seed;
  const auto res = run_acceptance(ctx);
  // timings go to the manifest so the CSV stays reproducible
  Csv csv({"criterion", "pass"});
  int failed = 0;
  for (const auto& c : res) {
    *r.log << summary_line(c) << '\n';
    csv.raw({std::to_string(c.id), c.pass ? "1" : "0"});
    r.result("seconds_" + std::to_string(c.id), c.seconds);
    r.man.invariants.emplace_back("criterion_" + std::to_string(c.id), c.pass);
    failed += !c.pass;
  }
  r.emit("acceptance.csv", csv);
  r.result("failed", failed);
  if (failed) r.verdict = 1;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"equilibria", "stability", "simulate", "continue",
                                              "shadow-branch", "layer", "verify-shadow-limit", "verify-all"};
  return names;
}

int run_command(const Invocation& inv, std::ostream& log) {
  namespace fs = std::filesystem;
  const auto t0 = std::chrono::steady_clock::now();
  Run r;
  r.log = &log;
  r.man.command = inv.command;
  const fs::path out = resolve_out_dir(inv.out_flag);

  auto finish = [&](int code) {
    r.man.exit_code = code;
    r.man.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    try {
      write_atomic(out / "manifest.json", r.man.json());
    } catch (const std::exception& e) {
      log << "error: cannot write manifest: " << e.what() << '\n';
      return code ? code : 3;
    }
    return code;
  };
  auto fail = [&](const std::string& status, const std::string& msg, int code) {
    r.man.status = status;
    r.man.error = msg;
    r.man.outputs.clear();
    log << "error: " << msg << '\n';
    return finish(code);
  };

  static const std::map<std::string, std::function<void(Run&)>> table{
      {"equilibria", cmd_equilibria},
      {"stability", cmd_stability},
      {"simulate", cmd_simulate},
      {"continue", cmd_continue},
      {"shadow-branch", cmd_shadow_branch},
      {"layer", cmd_layer},
      {"verify-shadow-limit", cmd_shadow_limit},
      {"verify-all", [&](Run& run) { cmd_verify_all(run, inv.seed.has_value()); }},
  };
  const auto it = table.find(inv.command);
  if (it == table.end()) return fail("config_error", "unknown command '" + inv.command + "'", 2);

  try {
    r.cfg = inv.config_path.empty() ? RunConfig{} : load_config(inv.config_path);
    if (inv.seed) r.cfg.seed = *inv.seed;
  } catch (const Error& e) {
    return fail("config_error", e.what(), 2);
  }
  r.man.config = config_echo(r.cfg);
  r.man.seed = r.cfg.seed;
  r.man.warnings = r.cfg.warnings;

  try {
    it->second(r);
  } catch (const Error& e) {
    const int code = exit_code_for(e.kind());
    return fail(code == 2 ? "config_error" : code == 4 ? "invariant_violation" : "numerical_failure", e.what(),
                code);
  } catch (const std::exception& e) {
    return fail("numerical_failure", e.what(), 3);
  }

  try {
    for (const auto& [name, text] : r.files) {
      write_atomic(out / name, text);
      r.man.outputs.push_back(name);
    }
  } catch (const std::exception& e) {
    return fail("io_error", e.what(), 3);
  }
  if (r.verdict) r.man.status = "verification_failed";
  return finish(r.verdict);
}

}  // namespace chemotax
