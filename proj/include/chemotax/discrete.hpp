#pragma once

#include "chemotax/grid.hpp"
#include "chemotax/model.hpp"

#include <Eigen/SparseCore>

namespace chemotax {

struct State {
  Grid1D grid;
  Field u, v;
  double t = 0;

  State() = default;
  State(const Grid1D& g, const Field& u_, const Field& v_, double t_ = 0)
      : grid(g), u(u_), v(v_), t(t_) {}
  static State constant(const Grid1D& g, double u0, double v0);
  bool finite() const;
};

// Discretized stationary residual on the conservative flux form
//   ru_j = (Fu_{j+1/2} - Fu_{j-1/2}) / w_j + f(u_j, v_j),
//   Fu_{j+1/2} = D1 (u_{j+1}-u_j)/h + chi um phi(vm) (v_{j+1}-v_j)/h,
// with um, vm arithmetic face means and zero flux through both ends.
struct StationaryEval {
  Field ru, rv;
  Field dru_dchi;
  // Magnitude below which the residual is dominated by rounding.
  double roundoff = 0;
  // Residual produced by rounding the stored state itself (D1 eps |u| / h^2
  // and kin). Newton stops in [roundoff, floor] once steps stop helping.
  double floor = 0;

  double norm() const;
};

StationaryEval stationary_residual(const State& s, const ModelParams& p);
double steady_residual_norm(const State& s, const ModelParams& p);

// Unknowns interleaved as (u_0, v_0, u_1, v_1, ...).
inline int iu(int j) { return 2 * j; }
inline int iv(int j) { return 2 * j + 1; }

Eigen::SparseMatrix<double> stationary_jacobian(const State& s, const ModelParams& p);
Eigen::VectorXd pack(const State& s);
void unpack(const Eigen::VectorXd& x, State& s);

}  // namespace chemotax
