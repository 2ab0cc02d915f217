#include "chemotax/shadow.hpp"

#include "chemotax/continuation.hpp"
#include "chemotax/error.hpp"
#include "chemotax/stability.hpp"

#include <Eigen/Dense>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace chemotax {

void ShadowParams::validate() const {
  if (!(r > 0)) throw Error(ErrorKind::InvalidArgument, "shadow r must be > 0");
  if (!(eps > 0)) throw Error(ErrorKind::InvalidArgument, "shadow eps must be > 0");
  if (!(L > 0)) throw Error(ErrorKind::InvalidArgument, "shadow L must be > 0");
  for (double x : {a1, a2, b1, b2, c1, c2})
    if (!(x >= 0)) throw Error(ErrorKind::InvalidArgument, "kinetic constants must be >= 0");
}

ShadowParams ShadowParams::from_model(const ModelParams& p, double r) {
  ShadowParams sp;
  sp.a1 = p.a1;
  sp.a2 = p.a2;
  sp.b1 = p.b1;
  sp.b2 = p.b2;
  sp.c1 = p.c1;
  sp.c2 = p.c2;
  sp.r = r;
  sp.eps = p.D2;
  sp.L = p.L;
  sp.sensitivity = p.sensitivity;
  return sp;
}

ShadowPartials shadow_partials(const ShadowParams& sp, double v, double l) {
  const auto s = sensitivity_eval(sp.sensitivity, v);
  const double r = sp.r;
  const double E = std::exp(-r * s.Phi);
  const double E1 = -r * s.phi * E;
  const double E2 = (r * r * s.phi * s.phi - r * s.dphi) * E;
  const double E3 = (-r * r * r * s.phi * s.phi * s.phi + 3 * r * r * s.phi * s.dphi - r * s.ddphi) * E;
  ShadowPartials d{};
  d.f = (sp.a2 - sp.b2 * l * E - sp.c2 * v) * v;
  d.fv = sp.a2 - sp.b2 * l * (E + v * E1) - 2 * sp.c2 * v;
  d.fvv = -sp.b2 * l * (2 * E1 + v * E2) - 2 * sp.c2;
  d.fvvv = -sp.b2 * l * (3 * E2 + v * E3);
  d.fl = -sp.b2 * v * E;
  d.fvl = -sp.b2 * (E + v * E1);
  d.g = (sp.a1 - sp.b1 * l * E - sp.c1 * v) * E;
  d.gv = sp.a1 * E1 - 2 * sp.b1 * l * E * E1 - sp.c1 * (E + v * E1);
  d.gvv = sp.a1 * E2 - 2 * sp.b1 * l * (E1 * E1 + E * E2) - sp.c1 * (2 * E1 + v * E2);
  d.gl = -sp.b1 * E * E;
  return d;
}

std::pair<double, double> shadow_equilibrium(const ShadowParams& sp) {
  const double den = sp.b1 * sp.c2 - sp.b2 * sp.c1;
  if (den == 0) throw Error(ErrorKind::SingularDenominator, "b1*c2 == b2*c1");
  const double vb = (sp.a2 * sp.b1 - sp.a1 * sp.b2) / den;
  const double ub = sp.b1 == 0 ? (sp.a2 - sp.c2 * vb) / sp.b2 : (sp.a1 * sp.c2 - sp.a2 * sp.c1) / den;
  if (!(vb > 0 && ub > 0))
    throw Error(ErrorKind::NoCoexistenceState, "shadow constant state is not positive");
  return {vb, ub * std::exp(sp.r * sensitivity_eval(sp.sensitivity, vb).Phi)};
}

ShadowState shadow_constant_state(const ShadowParams& sp, const Grid1D& g) {
  const auto [vb, lb] = shadow_equilibrium(sp);
  return ShadowState{g, Field::Constant(g.n, vb), lb, sp.eps};
}

namespace {

double eps_numerator(const ShadowParams& sp) {
  const auto [vb, lb] = shadow_equilibrium(sp);
  (void)lb;
  const double num = ((sp.a2 - sp.c2 * vb) * sp.r * phi(sp.sensitivity, vb) - sp.c2) * vb;
  if (!(num > 0))
    throw Error(ErrorKind::NoBifurcation, "(a2 - c2 vbar) r Phi'(vbar) <= c2: no bifurcation");
  return num;
}

}  // namespace

double epsilon_n(const ShadowParams& sp, int n) {
  if (n == 0) throw Error(ErrorKind::NZero, "n = 0 is excluded");
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "n must be positive");
  return eps_numerator(sp) / neumann_eigenvalue(n, sp.L);
}

double epsilon_n_h(const ShadowParams& sp, int n, const Grid1D& g) {
  if (n == 0) throw Error(ErrorKind::NZero, "n = 0 is excluded");
  return eps_numerator(sp) / neumann_eigenvalue_h(n, g.L, g.n);
}

double ShadowResidual::norm() const {
  return std::max(r.lpNorm<Eigen::Infinity>(), std::abs(constraint));
}

ShadowResidual shadow_residual(const ShadowState& s, const ShadowParams& sp) {
  const int n = s.grid.n;
  const double h = s.grid.h();
  const Field w = s.grid.weights();
  ShadowResidual out;
  out.r = Field::Zero(n);
  double fmax = 0, rmax = 0, cmax = 0, smax = 0;
  for (int j = 0; j + 1 < n; ++j) {
    const double F = s.eps * (s.v[j + 1] - s.v[j]) / h;
    out.r[j] += F / w[j];
    out.r[j + 1] -= F / w[j + 1];
    fmax = std::max(fmax, std::abs(F));
    smax = std::max(smax, s.eps * (std::abs(s.v[j]) + std::abs(s.v[j + 1])) / h);
  }
  for (int j = 0; j < n; ++j) {
    const auto d = shadow_partials(sp, s.v[j], s.lambda);
    out.r[j] += d.f;
    out.constraint += w[j] * d.g;
    const double E = std::exp(-sp.r * sensitivity_eval(sp.sensitivity, s.v[j]).Phi);
    rmax = std::max(rmax, std::abs(s.v[j]) * (sp.a2 + sp.b2 * s.lambda * E + sp.c2 * std::abs(s.v[j])));
    cmax += w[j] * E * (sp.a1 + sp.b1 * s.lambda * E + sp.c1 * std::abs(s.v[j]));
  }
  const double e = std::numeric_limits<double>::epsilon();
  out.roundoff = 16 * e * std::max(2 * fmax / h + rmax, cmax);
  out.floor = std::max(out.roundoff, 4 * e * std::max(2 * smax / h + rmax, cmax));
  return out;
}

Eigen::SparseMatrix<double> shadow_jacobian(const ShadowState& s, const ShadowParams& sp) {
  const int n = s.grid.n;
  const double h = s.grid.h();
  const Field w = s.grid.weights();
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(6 * n);
  for (int j = 0; j + 1 < n; ++j) {
    const double c = s.eps / h;
    t.emplace_back(j, j, -c / w[j]);
    t.emplace_back(j, j + 1, c / w[j]);
    t.emplace_back(j + 1, j, c / w[j + 1]);
    t.emplace_back(j + 1, j + 1, -c / w[j + 1]);
  }
  double gl = 0;
  for (int j = 0; j < n; ++j) {
    const auto d = shadow_partials(sp, s.v[j], s.lambda);
    t.emplace_back(j, j, d.fv);
    t.emplace_back(j, n, d.fl);
    t.emplace_back(n, j, w[j] * d.gv);
    gl += w[j] * d.gl;
  }
  t.emplace_back(n, n, gl);
  Eigen::SparseMatrix<double> J(n + 1, n + 1);
  J.setFromTriplets(t.begin(), t.end());
  return J;
}

namespace {

std::vector<std::complex<double>> sorted_leading(const Eigen::VectorXcd& ev, int m) {
  std::vector<std::complex<double>> out(ev.data(), ev.data() + ev.size());
  std::sort(out.begin(), out.end(), [](auto a, auto b) {
    return a.real() != b.real() ? a.real() > b.real() : a.imag() > b.imag();
  });
  if (m > 0 && static_cast<int>(out.size()) > m) out.resize(m);
  return out;
}

}  // namespace

std::vector<std::complex<double>> shadow_linearization_spectrum(const ShadowState& s,
                                                                const ShadowParams& sp, int m) {
  const int n = s.grid.n;
  const Eigen::MatrixXd J = Eigen::MatrixXd(shadow_jacobian(s, sp));
  const Eigen::MatrixXd A = J.topLeftCorner(n, n);
  const Eigen::VectorXd b = J.col(n).head(n);
  const Eigen::VectorXd c = J.row(n).head(n).transpose();
  const double d = J(n, n);
  Eigen::MatrixXd red;
  if (d != 0) {
    red = A - b * c.transpose() / d;
  } else {
    // mu is fixed by keeping c^T psi = 0 invariant; restrict to ker c^T.
    const double cb = c.dot(b);
    if (cb == 0) throw Error(ErrorKind::SingularJacobian, "constraint pencil is singular");
    const Eigen::MatrixXd PA = A - b * (c.transpose() * A) / cb;
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(c);
    const Eigen::MatrixXd Q = qr.householderQ();
    red = (Q.transpose() * PA * Q).bottomRightCorner(n - 1, n - 1);
  }
  Eigen::EigenSolver<Eigen::MatrixXd> es(red, false);
  return sorted_leading(es.eigenvalues(), m);
}

std::vector<std::complex<double>> shadow_spectrum_qz(const ShadowState& s, const ShadowParams& sp) {
  const int n = s.grid.n;
  const Eigen::MatrixXd J = Eigen::MatrixXd(shadow_jacobian(s, sp));
  Eigen::MatrixXd B = Eigen::MatrixXd::Identity(n + 1, n + 1);
  B(n, n) = 0;
  Eigen::GeneralizedEigenSolver<Eigen::MatrixXd> ges(J, B, false);
  const Eigen::VectorXcd a = ges.alphas();
  const Eigen::VectorXd be = ges.betas();
  const double scale = J.cwiseAbs().maxCoeff();
  std::vector<std::complex<double>> out;
  for (int i = 0; i < a.size(); ++i) {
    if (std::abs(be[i]) <= 1e-10 * std::abs(a[i])) continue;
    const std::complex<double> mu = a[i] / be[i];
    if (std::abs(mu) > 1e6 * scale) continue;
    out.push_back(mu);
  }
  Eigen::VectorXcd ev(out.size());
  for (size_t i = 0; i < out.size(); ++i) ev[i] = out[i];
  return sorted_leading(ev, 0);
}

double shadow_eigenvalue_nearest(const ShadowState& s, const ShadowParams& sp, double shift) {
  const int n = s.grid.n;
  Eigen::SparseMatrix<double> A = shadow_jacobian(s, sp);
  for (int j = 0; j < n; ++j) A.coeffRef(j, j) -= shift;
  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
  lu.analyzePattern(A);
  lu.factorize(A);
  if (lu.info() != Eigen::Success) throw Error(ErrorKind::SingularJacobian, "shift is an eigenvalue");
  Eigen::VectorXd x(n + 1);
  for (int j = 0; j <= n; ++j) x[j] = 1.0 + 0.5 * std::sin(3.0 * j + 1.0);
  x.normalize();
  double nu = 0, prev = 0;
  for (int it = 0; it < 500; ++it) {
    Eigen::VectorXd mx = x;
    mx[n] = 0;
    Eigen::VectorXd y = lu.solve(mx);
    nu = x.dot(y);
    x = y.normalized();
    if (it > 2 && std::abs(nu - prev) <= 1e-15 * std::abs(nu)) break;
    prev = nu;
  }
  return shift + 1.0 / nu;
}

ShadowK2 shadow_K2(const ShadowParams& sp, int n) {
  if (n == 0) throw Error(ErrorKind::NZero, "n = 0 is excluded");
  ShadowK2 out;
  out.n = n;
  const auto [vb, lb] = shadow_equilibrium(sp);
  out.vbar = vb;
  out.lambda_bar = lb;
  out.eps_n = epsilon_n(sp, n);
  const auto d = shadow_partials(sp, vb, lb);
  out.partials = d;
  const double L = sp.L;
  const double den = d.fv * d.gl - d.gv * d.fl;
  if (den == 0) throw Error(ErrorKind::SingularJacobian, "mean-mode system is singular");
  const double I2 = d.fvv * L / (24 * d.fv);
  const double I0 = -(d.fvv * d.gl - d.gvv * d.fl) * L / (4 * den);
  const double l2 = -(d.fv * d.gvv - d.gv * d.fvv) / (4 * den);
  const double rhs = d.fvv / 2 * (I2 + I0) + d.fvl * l2 * L / 2 + d.fvvv * L / 16;
  const double pref = 2 * L / (n * n * std::numbers::pi * std::numbers::pi);
  out.K2 = pref * rhs;

  if (sp.b1 == 0 && sp.sensitivity.is_unit()) {
    out.specialized = true;
    const double a1 = sp.a1, c1 = sp.c1, c2 = sp.c2, r = sp.r;
    out.theta = (sp.a2 - c2 * vb) * r;
    if (!(out.theta > c2)) throw Error(ErrorKind::NoBifurcation, "theta <= c2");
    out.alpha = -2 * a1 * vb * r * r + 17 * a1 * r - 8 * c1;
    out.beta = -9 * a1 * c2 * vb * r * r - 41 * a1 * c2 * r + 16 * c1 * c2;
    out.gamma = 12 * a1 * c2 * c2 * vb * r * r + 24 * a1 * c2 * c2 * r - 8 * c1 * c2 * c2;
    const double th = out.theta;
    out.F = out.alpha * th * th + out.beta * th + out.gamma;
    out.K2_as_printed = pref * out.F / (48 * (th - c2));
    const double disc = out.beta * out.beta - 4 * out.alpha * out.gamma;
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    out.theta1 = out.alpha != 0 ? (-out.beta - std::sqrt(disc)) / (2 * out.alpha) : nan;
    out.theta2 = out.alpha != 0 ? (-out.beta + std::sqrt(disc)) / (2 * out.alpha) : nan;
    const double rv = r * vb;
    if (std::abs(rv - 0.5) <= 1e-12) {
      out.case_tag = "iii";
      out.table_sign = th < 28 * c2 / 27 ? 1 : (th > 28 * c2 / 27 ? -1 : 0);
    } else if (std::abs(rv - 8) <= 8e-12) {
      out.case_tag = "iv";
      out.table_sign = th < 120 * c2 / 111 ? 1 : (th > 120 * c2 / 111 ? -1 : 0);
    } else if (rv > 0.5 && rv < 8) {
      out.case_tag = "ii";
      out.table_sign = (th > out.theta1 && th < out.theta2) ? -1 : 1;
    } else {
      out.case_tag = "i";
      out.table_sign = th < out.theta1 ? 1 : -1;
    }
  }
  return out;
}

ShadowState shadow_newton(const ShadowParams& sp, const ShadowState& guess, double tol,
                          NewtonReport* report, int max_iter) {
  if (!guess.v.allFinite() || !std::isfinite(guess.lambda))
    throw Error(ErrorKind::InvalidArgument, "shadow Newton guess is not finite");
  ShadowState s = guess;
  s.eps = sp.eps;
  ShadowResidual e = shadow_residual(s, sp);
  const int n = s.grid.n;
  bool stalled = false;
  double prev = std::numeric_limits<double>::infinity();
  for (int it = 0; it <= max_iter; ++it) {
    const double res = e.norm();
    const bool at_floor = res <= std::max(tol, e.floor) && res > 0.25 * prev;
    if (res <= std::max(tol, e.roundoff) || stalled || at_floor) {
      if (report) *report = {it, res, e.roundoff};
      return s;
    }
    if (it == max_iter) break;
    Eigen::VectorXd rhs(n + 1);
    rhs << -e.r, -e.constraint;
    const Eigen::VectorXd d = sparse_solve(shadow_jacobian(s, sp), rhs);
    double step = 1;
    ShadowState trial = s;
    ShadowResidual et;
    for (int h = 0; h <= 8; ++h) {
      trial.v = s.v + step * d.head(n);
      trial.lambda = s.lambda + step * d[n];
      if (trial.lambda > 0) {
        et = shadow_residual(trial, sp);
        if (et.norm() < res || h == 8) break;
      } else if (h == 8) {
        throw Error(ErrorKind::NewtonDiverged, "lambda left (0, inf)");
      }
      step /= 2;
    }
    Eigen::VectorXd x(n + 1);
    x << s.v, s.lambda;
    stalled = roundoff_step(d, x);
    prev = res;
    s = trial;
    e = et;
  }
  throw Error(ErrorKind::NewtonDiverged,
              "shadow Newton: no convergence, residual " + std::to_string(e.norm()));
}

}  // namespace chemotax
