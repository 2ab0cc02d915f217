#include "chemotax/simulator.hpp"

#include "chemotax/error.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace chemotax {
namespace {

void check_step(const State& s) {
  for (int j = 0; j < s.grid.n; ++j) {
    if (!std::isfinite(s.u[j]) || !std::isfinite(s.v[j]))
      throw Error(ErrorKind::StepRejected, "non-finite value at node " + std::to_string(j));
    if (s.u[j] < -1e-6 || s.v[j] < -1e-6)
      throw Error(ErrorKind::StepRejected, "negative density at node " + std::to_string(j));
  }
}

// Newton on D2 v'' + g(u, v) = 0 with u fixed.
void elliptic_v(const ModelParams& p, const Field& u, Field& v, const Grid1D& g) {
  const int n = g.n;
  const double h = g.h();
  const Field w = g.weights();
  for (int it = 0; it < 50; ++it) {
    Field r = Field::Zero(n);
    Eigen::VectorXd sub = Eigen::VectorXd::Zero(n), dia = Eigen::VectorXd::Zero(n),
                    sup = Eigen::VectorXd::Zero(n);
    for (int j = 0; j + 1 < n; ++j) {
      const double F = p.D2 * (v[j + 1] - v[j]) / h;
      r[j] += F / w[j];
      r[j + 1] -= F / w[j + 1];
      dia[j] -= p.D2 / (h * w[j]);
      sup[j] += p.D2 / (h * w[j]);
      dia[j + 1] -= p.D2 / (h * w[j + 1]);
      sub[j + 1] += p.D2 / (h * w[j + 1]);
    }
    for (int j = 0; j < n; ++j) {
      const auto k = kinetics(p, u[j], v[j]);
      r[j] += k.g;
      dia[j] += k.gv;
    }
    const double rn = r.lpNorm<Eigen::Infinity>();
    if (rn < 1e-13 * (1 + v.lpNorm<Eigen::Infinity>())) return;
    Eigen::VectorXd dv = -r;
    solve_tridiagonal(sub, dia, sup, dv);
    v += dv;
    if (!v.allFinite()) break;
  }
  throw Error(ErrorKind::StepRejected, "elliptic v solve did not converge");
}

}  // namespace

State step(const State& s, const ModelParams& p, double dt) {
  const int n = s.grid.n;
  const double h = s.grid.h();
  const Field w = s.grid.weights();
  State out = s;

  Eigen::VectorXd sub = Eigen::VectorXd::Zero(n), dia = Eigen::VectorXd::Ones(n),
                  sup = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd rhs(n);
  for (int j = 0; j < n; ++j) rhs[j] = s.u[j] + dt * kinetics(p, s.u[j], s.v[j]).f;
  for (int j = 0; j + 1 < n; ++j) {
    const double dv = s.v[j + 1] - s.v[j];
    const double pm = phi(p.sensitivity, 0.5 * (s.v[j] + s.v[j + 1]));
    // face flux = alpha u_j + beta u_{j+1}
    const double alpha = -p.D1 / h + 0.5 * p.chi * pm * dv / h;
    const double beta = p.D1 / h + 0.5 * p.chi * pm * dv / h;
    dia[j] -= dt * alpha / w[j];
    sup[j] -= dt * beta / w[j];
    sub[j + 1] += dt * alpha / w[j + 1];
    dia[j + 1] += dt * beta / w[j + 1];
  }
  solve_tridiagonal(sub, dia, sup, rhs);
  out.u = rhs;

  if (p.tau > 0) {
    sub.setZero();
    dia.setOnes();
    sup.setZero();
    const double c = dt * p.D2 / (p.tau * h);
    for (int j = 0; j < n; ++j) rhs[j] = s.v[j] + dt / p.tau * kinetics(p, out.u[j], s.v[j]).g;
    for (int j = 0; j + 1 < n; ++j) {
      dia[j] += c / w[j];
      sup[j] -= c / w[j];
      sub[j + 1] -= c / w[j + 1];
      dia[j + 1] += c / w[j + 1];
    }
    solve_tridiagonal(sub, dia, sup, rhs);
    out.v = rhs;
  } else {
    elliptic_v(p, out.u, out.v, s.grid);
  }
  out.t = s.t + dt;
  check_step(out);
  return out;
}

InvariantBounds invariant_bounds(const State& init, const ModelParams& p) {
  InvariantBounds b;
  const double vinf = init.v.lpNorm<Eigen::Infinity>();
  b.v_max = (p.c2 > 0 ? std::max(vinf, p.a2 / p.c2) : std::numeric_limits<double>::infinity()) + 1e-8;
  const double m0 = integrate(init.u, init.grid);
  b.mass_max = p.b1 > 0 ? std::max(m0, p.a1 * init.grid.L / p.b1) + 1e-6
                        : std::numeric_limits<double>::infinity();
  return b;
}

std::vector<std::string> check_invariants(const State& s, const InvariantBounds& b) {
  std::vector<std::string> bad;
  std::ostringstream m;
  m.precision(17);
  const double vmax = s.v.maxCoeff();
  if (!(vmax <= b.v_max)) {
    m.str("");
    m << "sup v = " << vmax << " exceeds " << b.v_max << " at t = " << s.t;
    bad.push_back(m.str());
  }
  const double mass = integrate(s.u, s.grid);
  if (!(mass <= b.mass_max)) {
    m.str("");
    m << "mass of u = " << mass << " exceeds " << b.mass_max << " at t = " << s.t;
    bad.push_back(m.str());
  }
  const double mn = std::min(s.u.minCoeff(), s.v.minCoeff());
  if (!(mn >= b.positivity)) {
    m.str("");
    m << "min density " << mn << " below " << b.positivity << " at t = " << s.t;
    bad.push_back(m.str());
  }
  return bad;
}

SimDiagnostics diagnose(const State& s, const ModelParams& p, const std::vector<int>& modes) {
  SimDiagnostics d;
  d.t = s.t;
  d.mass_u = integrate(s.u, s.grid);
  d.sup_v = s.v.maxCoeff();
  d.min_u = s.u.minCoeff();
  d.min_v = s.v.minCoeff();
  d.residual = steady_residual_norm(s, p);
  for (int k : modes) d.amplitudes.push_back(mode_amplitude(s.v, s.grid, k));
  return d;
}

namespace {

// Advances by dt, splitting into halves on rejection.
State advance(const State& s, const ModelParams& p, double dt, int depth, int max_depth,
              int& rejected) {
  try {
    return step(s, p, dt);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::StepRejected) throw;
    if (depth >= max_depth) throw;
    ++rejected;
    State mid = advance(s, p, dt / 2, depth + 1, max_depth, rejected);
    return advance(mid, p, dt / 2, depth + 1, max_depth, rejected);
  }
}

}  // namespace

SimResult simulate(const ModelParams& p, const State& init, double t_end, double dt,
                   double snapshot_every, const std::vector<int>& modes, const SimOptions& opt) {
  if (!(t_end > 0) || !(dt > 0)) throw Error(ErrorKind::InvalidArgument, "t_end and dt must be > 0");
  if (!init.finite()) throw Error(ErrorKind::InvalidArgument, "initial state is not finite");
  SimResult r;
  r.bounds = invariant_bounds(init, p);
  const long nsteps = std::max(1L, std::lround(t_end / dt));
  const long every = std::max(1L, std::lround(snapshot_every / dt));
  State s = init;
  auto monitor = [&](const State& st) {
    r.worst_v_margin = std::max(r.worst_v_margin, st.v.maxCoeff() - r.bounds.v_max);
    r.worst_mass_margin = std::max(r.worst_mass_margin, integrate(st.u, st.grid) - r.bounds.mass_max);
    r.worst_positivity = std::min(r.worst_positivity, std::min(st.u.minCoeff(), st.v.minCoeff()));
    const auto bad = check_invariants(st, r.bounds);
    if (!bad.empty()) throw Error(ErrorKind::InvariantViolation, bad.front());
    r.diagnostics.push_back(diagnose(st, p, modes));
    if (opt.store_snapshots) r.snapshots.push_back(st);
  };
  monitor(s);
  for (long i = 1; i <= nsteps; ++i) {
    s = advance(s, p, dt, 0, opt.max_halvings, r.rejected_steps);
    s.t = init.t + i * dt;
    if (i % every == 0 || i == nsteps) {
      monitor(s);
      if (opt.stop_residual > 0 && r.diagnostics.back().residual < opt.stop_residual) break;
    }
  }
  r.final = s;
  return r;
}

double fitted_growth_rate(const std::vector<SimDiagnostics>& d, int slot, double t0, double t1) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (const auto& e : d) {
    if (e.t < t0 || e.t > t1) continue;
    const double y = std::log(std::abs(e.amplitudes.at(slot)));
    sx += e.t;
    sy += y;
    sxx += e.t * e.t;
    sxy += e.t * y;
    ++m;
  }
  if (m < 2) throw Error(ErrorKind::InvalidArgument, "fit window holds fewer than two samples");
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace chemotax
