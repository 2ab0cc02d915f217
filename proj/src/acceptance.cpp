#include "chemotax/acceptance.hpp"

#include "chemotax/error.hpp"
#include "chemotax/layer.hpp"
#include "chemotax/shadow.hpp"
#include "chemotax/shadow_limit.hpp"
#include "chemotax/simulator.hpp"
#include "chemotax/stability.hpp"
#include "chemotax/steady.hpp"
#include "chemotax/weakly_nonlinear.hpp"

#include <boost/math/tools/toms748_solve.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <numbers>
#include <random>

namespace chemotax {

namespace {

std::string fmt(const char* f, ...) {
  char buf[1024];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

int sgn(double x) { return (x > 0) - (x < 0); }

void record(AcceptanceContext& ctx, const std::string& run, const SimResult& r) {
  MonitorRecord m;
  m.run = run;
  m.v_margin = r.worst_v_margin;
  m.mass_margin = r.worst_mass_margin;
  m.positivity = r.worst_positivity;
  m.tripped = m.v_margin > 0 || m.mass_margin > 0 || m.positivity < r.bounds.positivity;
  ctx.monitors.push_back(m);
}

// chi at which det H_k vanishes, by bracketing root search on the determinant.
double det_root(const ModelParams& p0, int k) {
  auto det = [&](double chi) {
    ModelParams p = p0;
    p.chi = chi;
    return mode_matrix(p, k).det();
  };
  double lo = -1, hi = 1;
  while (sgn(det(lo)) == sgn(det(hi))) {
    lo *= 2;
    hi *= 2;
    if (hi > 1e12) throw Error(ErrorKind::BracketMiss, "determinant has no sign change");
  }
  std::uintmax_t it = 200;
  auto tol = [](double a, double b) { return std::abs(a - b) <= 4e-16 * std::max(std::abs(a), std::abs(b)); };
  auto [a, b] = boost::math::tools::toms748_solve(det, lo, hi, tol, it);
  return 0.5 * (a + b);
}

ModelParams weak_defaults() { return ModelParams{}; }

ShadowParams shadow_at(double r, double theta) {
  ShadowParams sp;  // a1 = 2, c1 = 3, c2 = 1, b1 = 0
  const double vb = sp.a1 / sp.c1;
  sp.r = r;
  sp.a2 = theta / r + sp.c2 * vb;
  return sp;
}

}  // namespace

CriterionResult criterion_1(AcceptanceContext& ctx) {
  CriterionResult out{1, "bifurcation-value oracle", false, "", 0};
  std::mt19937_64 rng(ctx.seed + 1);
  std::uniform_real_distribution<double> U(0, 1);
  int draws = 0, tries = 0, checks = 0;
  double worst_det = 0, worst_root = 0;
  while (draws < 100 && tries < 10000) {
    ++tries;
    ModelParams p;
    p.a1 = 0.5 + 2.5 * U(rng);
    p.a2 = 0.5 + 2.5 * U(rng);
    p.b1 = 0.5 + 2.5 * U(rng);
    p.b2 = 0.5 + 2.5 * U(rng);
    p.c1 = 0.5 + 2.5 * U(rng);
    p.c2 = 0.5 + 2.5 * U(rng);
    p.D1 = std::pow(10.0, -1 + 2 * U(rng));
    p.D2 = std::pow(10.0, -1 + 2 * U(rng));
    p.L = 1 + 9 * U(rng);
    p.sensitivity.p = {0.5 + U(rng), U(rng), U(rng), 0.5 * U(rng)};
    const auto reg = classify_competition(p);
    if (reg == CompetitionRegime::Degenerate) continue;
    bool feasible = false;
    for (int k = 1; k <= 10; ++k) feasible = feasible || chi_k(p, k).feasible;
    if (!feasible) continue;
    ++draws;
    for (int k = 1; k <= 10; ++k) {
      const auto bp = chi_k(p, k);
      ModelParams q = p;
      q.chi = bp.chi_k;
      const auto m = mode_matrix(q, k);
      const double scale = std::abs(m.m11 * m.m22) + std::abs(m.m12 * m.m21);
      worst_det = std::max(worst_det, std::abs(m.det()) / scale);
      const double root = det_root(p, k);
      worst_root = std::max(worst_root, std::abs(root - bp.chi_k) / std::abs(bp.chi_k));
      ++checks;
    }
  }
  out.pass = draws == 100 && worst_det <= 1e-10 && worst_root <= 1e-10;
  out.detail = fmt("%d draws, %d (draw,k) pairs; max rel |det H_k(chi_k)| = %.2e, max rel |chi_k - root| = %.2e",
                   draws, checks, worst_det, worst_root);
  return out;
}

CriterionResult criterion_2(AcceptanceContext& ctx) {
  CriterionResult out{2, "instability threshold", false, "", 0};
  ModelParams p = weak_defaults();
  const auto th = chi_threshold(p, 64);
  double oracle = 1e300;
  int k_or = 0;
  for (int k = 1; k <= 64; ++k) {
    const double c = det_root(p, k);
    if (c > 0 && c < oracle) oracle = c, k_or = k;
  }
  bool ok = std::abs(th.chi0 - 12.75) <= 1e-12 && th.k0 == 1 && std::abs(oracle - 12.75) <= 1e-10 && k_or == 1;
  std::string d = fmt("chi0 = %.15g (det-root oracle %.15g), k0 = %d", th.chi0, oracle, th.k0);
  for (double f : {1.1, 0.9}) {
    ModelParams q = p;
    q.chi = f * th.chi0;
    Grid1D g(512, q.L);
    State init = branch_switch(q, th.k0, 1e-4, g);
    SimResult r = simulate(q, init, 10, 1e-3, 0.1, {th.k0});
    record(ctx, fmt("criterion 2, chi = %.2f chi0", f), r);
    const double rate = fitted_growth_rate(r.diagnostics, 0, 2, 10);
    const double lam = growth_rate(q, th.k0).first.real();
    const double rel = std::abs(rate / lam - 1);
    const double a0 = std::abs(r.diagnostics.front().amplitudes[0]);
    const double a1 = std::abs(r.diagnostics.back().amplitudes[0]);
    if (f > 1)
      ok = ok && rate > 0 && a1 > a0 && rel <= 0.05;
    else
      ok = ok && rate < 0 && a1 < a0 && rel <= 0.05;
    d += fmt("; %.1f chi0: fitted rate %.6g vs eigenvalue %.6g (rel %.1e), amplitude %.3g -> %.3g", f, rate, lam,
             rel, a0, a1);
  }
  out.pass = ok;
  out.detail = d;
  return out;
}

CriterionResult criterion_3(AcceptanceContext& ctx) {
  CriterionResult out{3, "pitchfork structure and sign of K2", false, "", 0};
  std::mt19937_64 rng(ctx.seed + 3);
  std::uniform_real_distribution<double> U(0, 1);

  // window where the quadratic term dominates: |chi - chi_k| up to about 0.2% of chi_k
  auto fit_branch = [](const ModelParams& p, int k, double K2, PitchforkFit& fit) {
    const auto bp = chi_k(p, k);
    const Point2 c = coexistence_state(p);
    const double a_max = std::min(0.05 * c.v, std::sqrt(0.002 * std::abs(bp.chi_k / K2)));
    ContinueOptions o;
    o.n = 129;
    o.max_points = 24;
    o.stability = false;
    Branch b[2];
    for (int i = 0; i < 2; ++i) {
      o.direction = i ? -1 : 1;
      b[i] = continue_branch(p, k, {bp.chi_k - 0.5 * std::abs(bp.chi_k), bp.chi_k + 0.5 * std::abs(bp.chi_k)},
                             a_max / 15, o);
    }
    fit = fit_pitchfork(b[0], b[1], a_max, 12);
  };

  int good = 0, tries = 0, skipped = 0;
  bool ok = true;
  std::string d;
  while (good < 5 && tries < 60) {
    ++tries;
    ModelParams p;
    p.a1 = 1 + 2 * U(rng);
    p.a2 = 1 + 2 * U(rng);
    p.b1 = 0.5 + 2.5 * U(rng);
    p.b2 = 0.5 + 2.5 * U(rng);
    p.c1 = 0.5 + 2.5 * U(rng);
    p.c2 = 0.5 + 2.5 * U(rng);
    p.D1 = std::pow(10.0, 2 + U(rng));
    p.D2 = std::pow(10.0, -3 + U(rng));
    p.L = std::numbers::pi;
    if (classify_competition(p) == CompetitionRegime::Degenerate) continue;
    WeaklyNonlinearReport w;
    try {
      if (!chi_k(p, 1).feasible) continue;
      w = weakly_nonlinear(p, 1);
    } catch (const Error&) {
      ++skipped;
      continue;
    }
    const Point2 c = coexistence_state(p);
    // quadratic bend must be resolvable before the window saturates
    if (std::abs(w.K2) * 0.0025 * c.v * c.v < 1e-6 * std::abs(w.chi_k)) {
      ++skipped;
      continue;
    }
    PitchforkFit f;
    try {
      fit_branch(p, 1, w.K2, f);
    } catch (const Error&) {
      ++skipped;
      continue;
    }
    ++good;
    const bool match = sgn(f.K2) == sgn(w.K2) && std::abs(f.K1) <= 1e-3;
    ok = ok && match;
    d += fmt("%s[%s D1=%.3g D2=%.3g] K2 %.5g fit %.5g K1 %.1e", d.empty() ? "" : "; ",
             std::string(to_string(classify_competition(p))).c_str(), p.D1, p.D2, w.K2, f.K2, f.K1);
  }
  ok = ok && good >= 5;

  // strong regime: negative bend
  ModelParams s;
  s.a1 = 2, s.a2 = 1, s.b1 = 1, s.b2 = 1, s.c1 = 3, s.c2 = 1, s.D1 = 100, s.D2 = 0.01;
  const auto ws = weakly_nonlinear(s, 1);
  PitchforkFit fs;
  fit_branch(s, 1, ws.K2, fs);
  const bool strong_ok = ws.asymptotic_sign == AsymptoticSign::Negative && ws.K2 < 0 && fs.K2 < 0 &&
                         std::abs(fs.K1) <= 1e-3;
  ok = ok && strong_ok;
  d += fmt("; strong a=(2,1) b=(1,1) c=(3,1) D1=100 D2=0.01: predicted %s, K2 %.6g, fit %.6g, K1 %.1e",
           std::string(to_string(ws.asymptotic_sign)).c_str(), ws.K2, fs.K2, fs.K1);
  d += fmt("; %d draws skipped (resonant, flat, or continuation failure)", skipped);
  out.pass = ok;
  out.detail = d;
  return out;
}

CriterionResult criterion_4(AcceptanceContext&) {
  CriterionResult out{4, "mode selection", false, "", 0};
  bool ok = true;
  std::string d;
  struct Case {
    const char* name;
    ModelParams p;
  };
  ModelParams A;
  A.D1 = 100, A.D2 = 0.01;
  A.sensitivity.p = {0.5, 1.5, 0, 0};  // phi'/phi = c2/(b2 ubar), phi'' = 0 at vbar
  ModelParams B;
  B.D1 = 100, B.D2 = 1e-3;
  for (const Case& c : {Case{"phi=0.5+1.5v, D1=100, D2=0.01", A}, Case{"phi=1, D1=100, D2=1e-3", B}}) {
    const auto th = chi_threshold(c.p, 64);
    const double K2k0 = weakly_nonlinear(c.p, th.k0).K2;
    d += fmt("%s[%s] k0 = %d, K2(k0) = %.4g:", d.empty() ? "" : "; ", c.name, th.k0, K2k0);
    for (int k = 1; k <= 3; ++k) {
      const auto bp = chi_k(c.p, k);
      ContinueOptions o;
      o.n = 129;
      o.max_points = 10;
      Branch br = continue_branch(c.p, k, {0.5 * bp.chi_k, 1.5 * bp.chi_k}, 1e-3, o);
      int stable = 0;
      for (const auto& pt : br.points) stable += pt.stable;
      const int total = static_cast<int>(br.points.size());
      if (k != th.k0) {
        ok = ok && total > 0 && stable == 0;
        d += fmt(" k=%d %d/%d stable", k, stable, total);
      } else if (K2k0 > 0) {
        ok = ok && total > 0 && stable == total;
        d += fmt(" k=%d (K2>0, predicted stable) %d/%d stable", k, stable, total);
      } else {
        d += fmt(" k=%d (K2<0) %d/%d stable", k, stable, total);
      }
    }
  }
  out.pass = ok;
  out.detail = d;
  return out;
}

CriterionResult criterion_5(AcceptanceContext& ctx) {
  CriterionResult out{5, "shadow limit", false, "", 0};
  ModelParams p = weak_defaults();
  p.D2 = 0.1;
  ShadowLimitOptions o;
  o.seed = ctx.seed + 5;
  const auto tab = shadow_limit_check(p, 2, {1e2, 1e3, 1e4}, o);
  std::string d;
  bool ok = tab.strictly_decreasing;
  for (const auto& r : tab.rows) {
    MonitorRecord m{fmt("criterion 5, D1 = %g", r.D1), r.worst_v_margin, r.worst_mass_margin, r.worst_positivity,
                    r.worst_v_margin > 0 || r.worst_mass_margin > 0 || r.worst_positivity < -1e-10};
    ctx.monitors.push_back(m);
    ok = ok && r.relaxed && r.error.empty();
    d += fmt("%sD1=%g: osc(w) %.3e, |v - v_shadow| %.2e, osc(v) %.3f", d.empty() ? "" : "; ", r.D1, r.osc_w,
             r.v_distance, r.v_osc);
    if (!r.error.empty()) d += " (" + r.error + ")";
  }
  ok = ok && !tab.rows.empty() && tab.rows.back().osc_w <= 1e-2;
  d += tab.strictly_decreasing ? "; strictly decreasing" : "; NOT strictly decreasing";
  out.pass = ok;
  out.detail = d;
  return out;
}

CriterionResult criterion_6(AcceptanceContext&) {
  CriterionResult out{6, "shadow bifurcation values", false, "", 0};
  ShadowParams sp;
  const Grid1D g(4097, sp.L);
  bool ok = true;
  std::string d;
  const double e1 = epsilon_n(sp, 1);
  for (int n = 1; n <= 3; ++n) {
    ShadowParams q = sp;
    q.eps = epsilon_n(sp, n);
    const double ev = shadow_eigenvalue_nearest(shadow_constant_state(q, g), q, 1e-3);
    const double ratio_err = std::abs(q.eps * n * n - e1) / e1;
    ok = ok && std::abs(ev) <= 1e-6 && ratio_err <= 4e-16;
    d += fmt("%sn=%d eps_n=%.12g eigenvalue nearest 0: %.2e, |n^2 eps_n - eps_1|/eps_1 = %.1e",
             d.empty() ? "" : "; ", n, q.eps, ev, ratio_err);
  }
  for (int n = 4; n <= 8; ++n) ok = ok && std::abs(epsilon_n(sp, n) * n * n - e1) <= 4e-16 * e1;
  out.pass = ok;
  out.detail = d + "; 4097 nodes";
  return out;
}

CriterionResult criterion_7(AcceptanceContext&) {
  CriterionResult out{7, "shadow K2 sign map", false, "", 0};
  struct Sample {
    const char* region;
    double r, theta;
    int table;  // sign listed for the region
  };
  const double t27 = 28.0 / 27.0, t111 = 120.0 / 111.0;
  const std::vector<Sample> samples{
      {"i, r v < 1/2, theta < theta1", 0.6, 1.02, 1},
      {"i, r v < 1/2, theta > theta1", 0.6, 3.0, -1},
      {"i, r v > 8, theta < theta1", 15, 1.01, 1},
      {"i, r v > 8, theta > theta1", 15, 1.5, -1},
      {"ii, theta < theta1", 6, 1.03, 1},
      {"ii, theta1 < theta < theta2", 6, 2.0, -1},
      {"ii, theta > theta2", 6, 12.0, 1},
      {"iii, theta < 28/27", 0.75, t27 - 0.02, 1},
      {"iii, theta > 28/27", 0.75, t27 + 0.02, -1},
      {"iv, theta < 120/111", 12, t111 - 0.03, 1},
      {"iv, theta > 120/111", 12, t111 + 0.03, -1},
  };
  bool ok = true;
  std::string d;
  for (const auto& s : samples) {
    const auto K = shadow_K2(shadow_at(s.r, s.theta), 1);
    const bool m = K.table_sign == s.table && sgn(K.K2) == s.table && sgn(K.F) == s.table;
    ok = ok && m;
    d += fmt("%s(%s: r=%g theta=%.4g K2=%.4g %s)", d.empty() ? "" : " ", s.region, s.r, s.theta, K.K2,
             m ? "ok" : "MISMATCH");
  }
  // the 28/27 threshold is an exact root of F
  const auto K27 = shadow_K2(shadow_at(0.75, t27), 1);
  const bool root27 = std::abs(K27.F) <= 1e-12 * std::abs(K27.gamma);
  ok = ok && root27;
  d += fmt("; F(28c2/27) at r v = 1/2: %.1e", K27.F);

  // branch direction from eps-continuation
  const std::vector<Sample> fits{{"ii", 6, 2.0, -1}, {"i", 0.6, 1.02, 1}, {"ii", 6, 12.0, 1}};
  for (const auto& s : fits) {
    const ShadowParams sp = shadow_at(s.r, s.theta);
    const auto K = shadow_K2(sp, 1);
    ShadowBranch b[2];
    ShadowBranchOptions o;
    o.max_points = 25;
    o.stability = false;
    for (int i = 0; i < 2; ++i) {
      o.direction = i ? -1 : 1;
      b[i] = shadow_branch(sp, 1, {0.3 * K.eps_n, 3 * K.eps_n}, 1e-3, o);
    }
    const auto f = fit_shadow_pitchfork(b[0], b[1], 0.02, 12);
    const bool m = sgn(f.K2) == sgn(K.K2) && sgn(f.K2) == s.table;
    ok = ok && m;
    d += fmt("; fit r=%g theta=%g: %.5g vs %.5g %s", s.r, s.theta, f.K2, K.K2, m ? "ok" : "MISMATCH");
  }
  out.pass = ok;
  out.detail = d;
  return out;
}

CriterionResult criterion_8(AcceptanceContext&) {
  CriterionResult out{8, "transition layer", false, "", 0};
  ShadowParams sp;
  sp.a1 = 2, sp.a2 = 1, sp.b1 = 0, sp.b2 = 1, sp.c1 = 3, sp.c2 = 1, sp.r = 2, sp.L = 1;
  const double v2 = 0.75;
  const double lam0 = 0.25 * std::exp(1.5);
  bool ok = true;
  std::string d;
  double prev_err = 1e300, prev_dl = 1e300;
  for (double eps : {1e-3, 1e-4, 1e-5}) {
    sp.eps = eps;
    const auto o = layer_solve(sp, v2);
    const auto& R = o.report;
    const double dl = std::abs(R.lambda_eps - lam0);
    const bool step = R.converged && std::isfinite(R.interface_error) && R.interface_error < prev_err && dl < prev_dl;
    ok = ok && step;
    d += fmt("%seps=%g: %s, lambda %.8g (|.-lambda0| %.2e), x0 measured %.5g vs %.5g", d.empty() ? "" : "; ", eps,
             R.converged ? "converged" : "diverged", R.lambda_eps, dl, R.x0_measured, R.x0_predicted);
    if (!R.message.empty()) d += " [" + R.message + "]";
    prev_err = R.interface_error;
    prev_dl = dl;
    if (eps == 1e-5) ok = ok && R.interface_error <= 0.05;
  }
  const double lstar = equal_area_lambda(sp);
  const double v2star = bistable_roots(lstar, sp).v_bar2;
  d += fmt("; equal-area lambda* = %.8g gives v_bar2* = %.6g, below a1/c1 = %.6g, so no layer exists and Newton "
           "returns the constant state",
           lstar, v2star, sp.a1 / sp.c1);
  // diagnostic only: a1 = 1 puts the equal-area mean inside the admissible interval
  ShadowParams q = sp;
  q.a1 = 1;
  const double v2q = bistable_roots(equal_area_lambda(q), q).v_bar2;
  d += fmt("; supplementary a1=1, v_bar2=%.6g:", v2q);
  for (double eps : {1e-3, 1e-4, 1e-5}) {
    q.eps = eps;
    const auto& R = layer_solve(q, v2q).report;
    d += fmt(" eps=%g interface error %.2g |lambda-lambda0| %.1e;", eps, R.interface_error,
             std::abs(R.lambda_eps - R.lambda0));
  }
  d.pop_back();
  out.pass = ok;
  out.detail = d;
  return out;
}

CriterionResult criterion_9(AcceptanceContext&) {
  CriterionResult out{9, "heteroclinic integrity", false, "", 0};
  ShadowParams sp;
  sp.a1 = 2, sp.a2 = 1, sp.b1 = 0, sp.b2 = 1, sp.c1 = 3, sp.c2 = 1, sp.r = 2, sp.L = 1;
  const auto prof = heteroclinic_profile(sp);
  const double rel = std::abs(prof.kappa_fit / prof.kappa - 1);
  const double mid = prof(0.0);
  out.pass = prof.hamiltonian_drift <= 1e-6 && rel <= 0.02 && mid == prof.v_bar2 / 2;
  out.detail = fmt("lambda* %.12g, v_bar2 %.10g; first-integral drift %.2e; tail rate %.6g vs %.6g (rel %.1e); "
                   "V(0) - v_bar2/2 = %.1e",
                   prof.lambda, prof.v_bar2, prof.hamiltonian_drift, prof.kappa_fit, prof.kappa, rel,
                   mid - prof.v_bar2 / 2);
  return out;
}

CriterionResult criterion_10(AcceptanceContext& ctx) {
  CriterionResult out{10, "a-priori bound enforcement", false, "", 0};
  if (ctx.monitors.empty()) {
    ModelParams p = weak_defaults();
    p.chi = 1.1 * chi_threshold(p).chi0;
    Grid1D g(256, p.L);
    SimResult r = simulate(p, branch_switch(p, 1, 1e-2, g), 5, 1e-3, 0.1, {1});
    record(ctx, "criterion 10, short run", r);
  }
  int tripped = 0;
  double worst_v = -1e300, worst_m = -1e300;
  for (const auto& m : ctx.monitors) {
    tripped += m.tripped;
    worst_v = std::max(worst_v, m.v_margin);
    worst_m = std::max(worst_m, m.mass_margin);
  }
  // corrupted states must trip every monitor
  ModelParams p = weak_defaults();
  Grid1D g(128, p.L);
  const Point2 c = coexistence_state(p);
  const State clean = State::constant(g, c.u, c.v);
  const InvariantBounds b = invariant_bounds(clean, p);
  State hot = clean;
  hot.v[10] = b.v_max + 1e-6;
  State neg = clean;
  neg.u[20] = -1e-6;
  State heavy = clean;
  heavy.u *= 2.0;
  heavy.u *= b.mass_max / integrate(clean.u, g);
  const auto vh = check_invariants(hot, b), vn = check_invariants(neg, b), vm = check_invariants(heavy, b);
  const bool neg_ok = !vh.empty() && !vn.empty() && !vm.empty() && check_invariants(clean, b).empty();
  out.pass = tripped == 0 && neg_ok;
  out.detail = fmt("%zu monitored runs, %d tripped; worst v margin %.3g, worst mass margin %.3g; corrupted states "
                   "tripped v/positivity/mass: %s/%s/%s",
                   ctx.monitors.size(), tripped, worst_v, worst_m, vh.empty() ? "no" : "yes",
                   vn.empty() ? "no" : "yes", vm.empty() ? "no" : "yes");
  return out;
}

std::vector<CriterionResult> run_acceptance(AcceptanceContext& ctx, const std::vector<int>& which) {
  using Fn = CriterionResult (*)(AcceptanceContext&);
  static const Fn all[] = {criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
                           criterion_6, criterion_7, criterion_8, criterion_9, criterion_10};
  std::vector<int> ids = which;
  if (ids.empty())
    for (int i = 1; i <= 10; ++i) ids.push_back(i);
  std::vector<CriterionResult> out;
  for (int id : ids) {
    if (id < 1 || id > 10) throw Error(ErrorKind::InvalidArgument, "criterion id out of range");
    const auto t0 = std::chrono::steady_clock::now();
    CriterionResult r;
    try {
      r = all[id - 1](ctx);
    } catch (const std::exception& e) {
      r.id = id;
      r.title = "error";
      r.pass = false;
      r.detail = std::string("threw ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.push_back(std::move(r));
  }
  return out;
}

std::string summary_line(const CriterionResult& r) {
  return fmt("criterion %2d %s (%.1fs) %s: ", r.id, r.pass ? "PASS" : "FAIL", r.seconds, r.title.c_str()) + r.detail;
}

}  // namespace chemotax
