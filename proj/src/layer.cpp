#include "chemotax/layer.hpp"

#include "chemotax/error.hpp"

#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>

namespace chemotax {

namespace {

void require_layer_setting(const ShadowParams& sp) {
  sp.validate();
  if (sp.b1 != 0) throw Error(ErrorKind::InvalidArgument, "layer operations need b1 = 0");
  if (!sp.sensitivity.is_unit()) throw Error(ErrorKind::InvalidArgument, "layer operations need phi = 1");
}

double ftilde(const ShadowParams& sp, double lambda, double v) {
  return sp.a2 - sp.b2 * lambda * std::exp(-sp.r * v) - sp.c2 * v;
}

double fv(const ShadowParams& sp, double lambda, double v) {
  // d/dv [ftilde * v]
  return ftilde(sp, lambda, v) + v * (sp.b2 * lambda * sp.r * std::exp(-sp.r * v) - sp.c2);
}

template <class F>
double bisect(F&& f, double lo, double hi, int iters = 200) {
  double flo = f(lo);
  for (int i = 0; i < iters; ++i) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    double fm = f(mid);
    if (fm == 0) return mid;
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double smoothstep5(double t) {
  t = std::clamp(t, 0.0, 1.0);
  return t * t * t * (10 + t * (-15 + 6 * t));
}

}  // namespace

double bistable_f(const ShadowParams& sp, double lambda, double v) { return ftilde(sp, lambda, v) * v; }

double bistable_F(const ShadowParams& sp, double lambda, double v) {
  const double r = sp.r;
  // int_0^v s e^{-rs} ds; expm1 keeps small rv accurate
  double rv = r * v;
  double moment = (-std::expm1(-rv) - rv * std::exp(-rv)) / (r * r);
  return sp.a2 * v * v / 2 - sp.b2 * lambda * moment - sp.c2 * v * v * v / 3;
}

std::pair<double, double> bistable_window(const ShadowParams& sp) {
  return {sp.a2 / sp.b2, sp.c2 / (sp.b2 * sp.r) * std::exp(sp.a2 * sp.r / sp.c2 - 1)};
}

BistableStructure bistable_roots(double lambda, const ShadowParams& sp) {
  sp.validate();
  if (!(sp.r > sp.c2 / sp.a2))
    throw Error(ErrorKind::OutsideWindow, "need r > c2/a2 for a bistable window");
  BistableStructure b;
  b.lambda = lambda;
  b.lambda_window = bistable_window(sp);
  b.v_star = sp.a2 / sp.c2 - 1 / sp.r;
  auto [lo, hi] = b.lambda_window;
  if (!(lambda > lo) || lambda > hi)
    throw Error(ErrorKind::OutsideWindow, "lambda " + std::to_string(lambda) + " not in (" +
                                              std::to_string(lo) + ", " + std::to_string(hi) + ")");
  if (lambda == hi) {
    b.v_bar1 = b.v_bar2 = b.v_star;
    return b;
  }
  auto g = [&](double v) { return ftilde(sp, lambda, v); };
  b.v_bar1 = bisect(g, 0.0, b.v_star);
  b.v_bar2 = bisect(g, b.v_star, sp.a2 / sp.c2);
  return b;
}

double equal_area_lambda(const ShadowParams& sp) {
  auto [lo, hi] = bistable_window(sp);
  auto G = [&](double l) { return bistable_F(sp, l, bistable_roots(l, sp).v_bar2); };
  // G > 0 at the lower end (f >= 0 on (0, v_bar2)), G < 0 at the tangency
  double a = std::nextafter(lo, hi), b = hi;
  double Ga = G(a), Gb = G(b);
  if (!(Ga > 0 && Gb < 0))
    throw Error(ErrorKind::NoEqualArea, "equal-area integral does not change sign over the window");
  return bisect(G, a, b);
}

double HeteroclinicProfile::operator()(double zq) const {
  if (z.empty()) return 0;
  if (zq <= z.front()) {
    // unstable manifold of v_bar2, V' / (v_bar2 - V) is constant there
    double d = v_bar2 - V.front();
    if (d <= 0) return v_bar2;
    double mu = -dV.front() / d;
    return v_bar2 - d * std::exp(mu * (zq - z.front()));
  }
  if (zq >= z.back()) return V.back() * std::exp(-kappa * (zq - z.back()));
  double dz = z[1] - z[0];
  auto i = std::min<std::size_t>(static_cast<std::size_t>((zq - z.front()) / dz), z.size() - 2);
  double t = (zq - z[i]) / dz;
  double h00 = (1 + 2 * t) * (1 - t) * (1 - t), h10 = t * (1 - t) * (1 - t);
  double h01 = t * t * (3 - 2 * t), h11 = t * t * (t - 1);
  return h00 * V[i] + h10 * dz * dV[i] + h01 * V[i + 1] + h11 * dz * dV[i + 1];
}

HeteroclinicProfile heteroclinic_profile(const ShadowParams& sp, double z_span, int nz) {
  require_layer_setting(sp);
  if (nz < 3) throw Error(ErrorKind::InvalidArgument, "nz must be >= 3");
  namespace ode = boost::numeric::odeint;
  using S = std::array<double, 2>;

  HeteroclinicProfile prof;
  const double lam = equal_area_lambda(sp);
  const double v2 = bistable_roots(lam, sp).v_bar2;
  prof.lambda = lam;
  prof.v_bar2 = v2;
  prof.kappa = std::sqrt(-fv(sp, lam, 0.0));
  prof.z_span = z_span > 0 ? z_span : 40 / prof.kappa;
  const double mu = std::sqrt(-fv(sp, lam, v2));
  const double delta = 1e-8;
  const double v_stop = 1e-6 * v2;
  const double z_max = 400 / std::min(mu, prof.kappa);

  auto rhs = [&](const S& x, S& dx, double) {
    dx[0] = x[1];
    dx[1] = -bistable_f(sp, lam, x[0]);
  };
  auto H = [&](const S& x) { return 0.5 * x[1] * x[1] + bistable_F(sp, lam, x[0]); };

  // Steps the orbit from the manifold start; on_step sees every accepted step.
  using Dense = decltype(ode::make_dense_output(1e-13, 1e-13, ode::runge_kutta_dopri5<S>()));
  auto run = [&](const std::function<bool(Dense&, double, double)>& on_step) {
    auto st = ode::make_dense_output(1e-13, 1e-13, ode::runge_kutta_dopri5<S>());
    st.initialize(S{v2 - delta, -delta * mu}, 0.0, 1e-3 / mu);
    while (st.current_time() < z_max) {
      auto [t0, t1] = st.do_step(rhs);
      const S& x = st.current_state();
      if (!on_step(st, t0, t1)) break;
      if (x[0] < v_stop || x[1] > 0 || x[0] < 0) break;
    }
  };

  // Pass 1: raw steps, Hamiltonian drift and the half-height crossing time.
  const double H0 = H(S{v2 - delta, -delta * mu});
  double z_cross = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> traw{0.0}, Vraw{v2 - delta}, dVraw{-delta * mu};
  double drift = 0;
  run([&](Dense& st, double t0, double t1) {
    const S& x = st.current_state();
    traw.push_back(t1);
    Vraw.push_back(x[0]);
    dVraw.push_back(x[1]);
    drift = std::max(drift, std::abs(H(x) - H0));
    if (std::isnan(z_cross) && x[0] <= v2 / 2) {
      S y;
      z_cross = bisect(
          [&](double t) {
            st.calc_state(t, y);
            return y[0] - v2 / 2;
          },
          t0, t1);
    }
    return true;
  });
  if (std::isnan(z_cross))
    throw Error(ErrorKind::NoEqualArea, "orbit never reaches half height; equal-area lambda inaccurate");
  const double z_end = traw.back();
  prof.hamiltonian_drift = drift;
  prof.z_raw.reserve(traw.size());
  for (double t : traw) prof.z_raw.push_back(t - z_cross);
  prof.V_raw = Vraw;
  prof.dV_raw = dVraw;

  // Pass 2: identical steps, dense output at the sample abscissae.
  prof.z.resize(nz);
  prof.V.assign(nz, std::numeric_limits<double>::quiet_NaN());
  prof.dV.assign(nz, 0.0);
  for (int i = 0; i < nz; ++i) prof.z[i] = -prof.z_span / 2 + prof.z_span * i / (nz - 1);
  // zero sits on the grid for odd nz; pin it so the translation is exact
  int next = 0;
  while (next < nz && prof.z[next] + z_cross <= 0) {
    double d = delta * std::exp(mu * (prof.z[next] + z_cross));
    prof.V[next] = v2 - d;
    prof.dV[next] = -mu * d;
    ++next;
  }
  run([&](Dense& st, double, double t1) {
    S y;
    while (next < nz && prof.z[next] + z_cross <= t1) {
      st.calc_state(prof.z[next] + z_cross, y);
      prof.V[next] = y[0];
      prof.dV[next] = y[1];
      ++next;
    }
    return next < nz;
  });
  for (int i = next; i < nz; ++i) {
    double d = Vraw.back() * std::exp(-prof.kappa * (prof.z[i] + z_cross - z_end));
    prof.V[i] = d;
    prof.dV[i] = -prof.kappa * d;
  }
  if (nz % 2 == 1) prof.V[nz / 2] = v2 / 2;

  // tail slope of log V over the integrated part
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (std::size_t i = 0; i < Vraw.size(); ++i) {
    if (Vraw[i] < 1e-5 * v2 || Vraw[i] > 1e-2 * v2) continue;
    double x = prof.z_raw[i], y = std::log(Vraw[i]);
    sx += x, sy += y, sxx += x * x, sxy += x * y;
    ++m;
  }
  prof.kappa_fit = m >= 3 ? -(m * sxy - sx * sy) / (m * sxx - sx * sx) : std::nan("");
  return prof;
}

double r_star(const ShadowParams& sp) {
  double gap = sp.a2 * sp.c1 - sp.a1 * sp.c2;
  if (!(gap > 0)) throw Error(ErrorKind::InvalidArgument, "layer needs a1/a2 < c1/c2");
  return sp.c1 / sp.a1 * std::log(sp.a2 * sp.c1 / gap);
}

double predicted_interface(double v_bar2, const ShadowParams& sp) {
  return sp.a1 * sp.L / (sp.a1 - (sp.a1 - sp.c1 * v_bar2) * std::exp(-sp.r * v_bar2));
}

LayerPrediction layer_predict(double v_bar2, const ShadowParams& sp) {
  require_layer_setting(sp);
  LayerPrediction pr;
  pr.r_star = r_star(sp);
  if (!(sp.r > pr.r_star))
    throw Error(ErrorKind::RTooSmall, "r = " + std::to_string(sp.r) + " <= r* = " + std::to_string(pr.r_star));
  auto lam = [&](double v) { return (sp.a2 - sp.c2 * v) * std::exp(sp.r * v) / sp.b2; };
  double top = sp.a2 / sp.c2;
  pr.v_bar2_double_star = bisect([&](double v) { return lam(v) - sp.a2 / sp.b2; }, top - 1 / sp.r, top);
  double lo = std::max(sp.a1 / sp.c1, top - 1 / sp.r);
  pr.I0 = {lo, pr.v_bar2_double_star};
  pr.lambda0 = lam(v_bar2);
  pr.x0 = predicted_interface(v_bar2, sp);
  if (v_bar2 < pr.I0.first || v_bar2 > pr.I0.second)
    throw Error(ErrorKind::OutsideI0, "v_bar2 = " + std::to_string(v_bar2) + " not in [" +
                                          std::to_string(pr.I0.first) + ", " + std::to_string(pr.I0.second) + "]");
  return pr;
}

double level_crossing(const Field& v, const Grid1D& g, double level) {
  for (int j = 0; j + 1 < g.n; ++j) {
    if (v[j] >= level && v[j + 1] < level) {
      double t = (v[j] - level) / (v[j] - v[j + 1]);
      return g.x(j) + t * g.h();
    }
  }
  return std::numeric_limits<double>::quiet_NaN();
}

LayerOutcome layer_solve(const ShadowParams& sp, double v_bar2, const LayerOptions& opt) {
  LayerPrediction pr = layer_predict(v_bar2, sp);
  const double eps = sp.eps;
  const double se = std::sqrt(eps);
  int n = opt.nodes > 0 ? opt.nodes : std::max(1025, static_cast<int>(std::ceil(16 * sp.L / se)));
  Grid1D g(n, sp.L);

  HeteroclinicProfile prof = heteroclinic_profile(sp);
  const double scale = v_bar2 / prof.v_bar2;
  const double x0 = pr.x0;

  LayerOutcome out;
  LayerReport& rep = out.report;
  rep.v_bar2_target = v_bar2;
  rep.eps = eps;
  rep.lambda0 = pr.lambda0;
  rep.lambda_star = prof.lambda;
  rep.x0_predicted = x0;
  rep.r_star = pr.r_star;
  rep.v_bar2_double_star = pr.v_bar2_double_star;
  rep.I0 = pr.I0;

  // Inner profile on |x - x0| < L*/4, outer constants beyond L*/2.
  const double Lstar = std::min(x0, sp.L - x0);
  Field v(n);
  for (int j = 0; j < n; ++j) {
    double x = g.x(j);
    double d = std::abs(x - x0);
    double w = Lstar > 0 ? 1 - smoothstep5((d - Lstar / 4) / (Lstar / 4)) : 0;
    double outer = x < x0 ? v_bar2 : 0.0;
    double inner = scale * prof((x - x0) / se);
    v[j] = w * inner + (1 - w) * outer;
  }
  out.ansatz = ShadowState{g, v, pr.lambda0, eps};

  NewtonReport nr;
  try {
    ShadowState s = shadow_newton(sp, out.ansatz, 1e-10, &nr);
    rep.converged = true;
    rep.iterations = nr.iterations;
    rep.residual = nr.residual;
    rep.lambda_eps = s.lambda;
    rep.v_min = s.v.minCoeff();
    rep.v_max = s.v.maxCoeff();
    rep.x0_measured = level_crossing(s.v, g, v_bar2 / 2);
    rep.interface_error = std::abs(rep.x0_measured - x0);
    double hi_err = 0, lo_err = 0;
    const double xc = std::isnan(rep.x0_measured) ? x0 : rep.x0_measured;
    for (int j = 0; j < n; ++j) {
      double x = g.x(j);
      if (x < xc - 10 * se) hi_err = std::max(hi_err, std::abs(s.v[j] - v_bar2));
      if (x > xc + 10 * se) lo_err = std::max(lo_err, std::abs(s.v[j]));
    }
    rep.plateau_high_error = hi_err;
    rep.plateau_low_error = lo_err;
    if (std::isnan(rep.x0_measured)) {
      rep.interface_error = std::numeric_limits<double>::infinity();
      rep.message = "solution has no downward crossing of v_bar2/2";
    }
    out.solution = std::move(s);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NewtonDiverged && e.kind() != ErrorKind::SingularJacobian) throw;
    rep.converged = false;
    rep.message = e.what();
    rep.x0_measured = std::numeric_limits<double>::quiet_NaN();
    rep.interface_error = std::numeric_limits<double>::infinity();
  }
  return out;
}

}  // namespace chemotax
