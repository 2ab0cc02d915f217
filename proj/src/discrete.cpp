#include "chemotax/discrete.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace chemotax {

State State::constant(const Grid1D& g, double u0, double v0) {
  return State(g, Field::Constant(g.n, u0), Field::Constant(g.n, v0));
}

bool State::finite() const { return u.allFinite() && v.allFinite() && std::isfinite(t); }

double StationaryEval::norm() const {
  return std::max(ru.lpNorm<Eigen::Infinity>(), rv.lpNorm<Eigen::Infinity>());
}

StationaryEval stationary_residual(const State& s, const ModelParams& p) {
  const int n = s.grid.n;
  const double h = s.grid.h();
  const Field w = s.grid.weights();
  StationaryEval e;
  e.ru = Field::Zero(n);
  e.rv = Field::Zero(n);
  e.dru_dchi = Field::Zero(n);
  double fmax = 0, rmax = 0, smax = 0;
  for (int j = 0; j + 1 < n; ++j) {
    const double du = s.u[j + 1] - s.u[j];
    const double dv = s.v[j + 1] - s.v[j];
    const double um = 0.5 * (s.u[j] + s.u[j + 1]);
    const double pm = phi(p.sensitivity, 0.5 * (s.v[j] + s.v[j + 1]));
    const double adv = um * pm * dv / h;
    const double Fu = p.D1 * du / h + p.chi * adv;
    const double Fv = p.D2 * dv / h;
    e.ru[j] += Fu / w[j];
    e.ru[j + 1] -= Fu / w[j + 1];
    e.rv[j] += Fv / w[j];
    e.rv[j + 1] -= Fv / w[j + 1];
    e.dru_dchi[j] += adv / w[j];
    e.dru_dchi[j + 1] -= adv / w[j + 1];
    fmax = std::max(fmax, std::abs(p.D1 * du / h) + std::abs(p.chi * adv) + std::abs(Fv));
    const double su = std::abs(s.u[j]) + std::abs(s.u[j + 1]);
    const double sv = std::abs(s.v[j]) + std::abs(s.v[j + 1]);
    smax = std::max(smax, (p.D1 * su + std::abs(p.chi * um * pm) * sv + p.D2 * sv) / h);
  }
  for (int j = 0; j < n; ++j) {
    const auto k = kinetics(p, s.u[j], s.v[j]);
    e.ru[j] += k.f;
    e.rv[j] += k.g;
    rmax = std::max(rmax, std::abs(p.a1 * s.u[j]) + std::abs(p.b1 * s.u[j] * s.u[j]) +
                              std::abs(p.c1 * s.u[j] * s.v[j]) + std::abs(p.a2 * s.v[j]) +
                              std::abs(p.b2 * s.u[j] * s.v[j]) + std::abs(p.c2 * s.v[j] * s.v[j]));
  }
  const double eps = std::numeric_limits<double>::epsilon();
  e.roundoff = 16 * eps * (2 * fmax / h + rmax);
  e.floor = std::max(e.roundoff, 4 * eps * (2 * smax / h + rmax));
  return e;
}

double steady_residual_norm(const State& s, const ModelParams& p) {
  return stationary_residual(s, p).norm();
}

Eigen::SparseMatrix<double> stationary_jacobian(const State& s, const ModelParams& p) {
  const int n = s.grid.n;
  const double h = s.grid.h();
  const Field w = s.grid.weights();
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(14 * n);
  for (int j = 0; j + 1 < n; ++j) {
    const double dv = s.v[j + 1] - s.v[j];
    const double um = 0.5 * (s.u[j] + s.u[j + 1]);
    const auto sv = sensitivity_eval(p.sensitivity, 0.5 * (s.v[j] + s.v[j + 1]));
    const double dF_duj = -p.D1 / h + p.chi * 0.5 * sv.phi * dv / h;
    const double dF_duk = p.D1 / h + p.chi * 0.5 * sv.phi * dv / h;
    const double dF_dvj = p.chi * um * (0.5 * sv.dphi * dv / h - sv.phi / h);
    const double dF_dvk = p.chi * um * (0.5 * sv.dphi * dv / h + sv.phi / h);
    for (int side = 0; side < 2; ++side) {
      const int row = side == 0 ? j : j + 1;
      const double sg = (side == 0 ? 1.0 : -1.0) / w[row];
      t.emplace_back(iu(row), iu(j), sg * dF_duj);
      t.emplace_back(iu(row), iu(j + 1), sg * dF_duk);
      t.emplace_back(iu(row), iv(j), sg * dF_dvj);
      t.emplace_back(iu(row), iv(j + 1), sg * dF_dvk);
      t.emplace_back(iv(row), iv(j), -sg * p.D2 / h);
      t.emplace_back(iv(row), iv(j + 1), sg * p.D2 / h);
    }
  }
  for (int j = 0; j < n; ++j) {
    const auto k = kinetics(p, s.u[j], s.v[j]);
    t.emplace_back(iu(j), iu(j), k.fu);
    t.emplace_back(iu(j), iv(j), k.fv);
    t.emplace_back(iv(j), iu(j), k.gu);
    t.emplace_back(iv(j), iv(j), k.gv);
  }
  Eigen::SparseMatrix<double> J(2 * n, 2 * n);
  J.setFromTriplets(t.begin(), t.end());
  return J;
}

Eigen::VectorXd pack(const State& s) {
  Eigen::VectorXd x(2 * s.grid.n);
  for (int j = 0; j < s.grid.n; ++j) {
    x[iu(j)] = s.u[j];
    x[iv(j)] = s.v[j];
  }
  return x;
}

void unpack(const Eigen::VectorXd& x, State& s) {
  for (int j = 0; j < s.grid.n; ++j) {
    s.u[j] = x[iu(j)];
    s.v[j] = x[iv(j)];
  }
}

}  // namespace chemotax
