#pragma once

#include <Eigen/Core>

namespace chemotax {

using Field = Eigen::VectorXd;

// Uniform node-centred grid on [0, L], endpoints included.
struct Grid1D {
  int n = 512;
  double L = 1;

  Grid1D() = default;
  Grid1D(int n_, double L_);

  double h() const { return L / (n - 1); }
  double x(int j) const { return j * h(); }
  Field nodes() const;
  // Trapezoid weights. They double as control-volume widths: half cells at
  // the two ends make the conservative flux form equal to ghost reflection.
  Field weights() const;
};

double integrate(const Field& f, const Grid1D& g);

// (2/L) * int f cos(k pi x / L) dx by trapezoid, (1/L) * int f for k = 0.
double mode_amplitude(const Field& f, const Grid1D& g, int k);

Field cosine_mode(const Grid1D& g, int k);

// Solves a tridiagonal system in place: sub[i] multiplies x[i-1], sup[i] x[i+1].
void solve_tridiagonal(Eigen::VectorXd sub, Eigen::VectorXd diag, Eigen::VectorXd sup,
                       Eigen::VectorXd& rhs);

}  // namespace chemotax
