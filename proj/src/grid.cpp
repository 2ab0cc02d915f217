#include "chemotax/grid.hpp"

#include "chemotax/error.hpp"

#include <cmath>
#include <numbers>

namespace chemotax {

Grid1D::Grid1D(int n_, double L_) : n(n_), L(L_) {
  if (n < 16) throw Error(ErrorKind::InvalidArgument, "grid needs at least 16 nodes");
  if (!(L > 0)) throw Error(ErrorKind::InvalidArgument, "grid length must be > 0");
}

Field Grid1D::nodes() const {
  Field x(n);
  const double hh = h();
  for (int j = 0; j < n; ++j) x[j] = j * hh;
  x[n - 1] = L;
  return x;
}

Field Grid1D::weights() const {
  Field w = Field::Constant(n, h());
  w[0] = w[n - 1] = h() / 2;
  return w;
}

double integrate(const Field& f, const Grid1D& g) { return g.weights().dot(f); }

Field cosine_mode(const Grid1D& g, int k) {
  Field c(g.n);
  for (int j = 0; j < g.n; ++j) c[j] = std::cos(k * std::numbers::pi * j / (g.n - 1));
  return c;
}

double mode_amplitude(const Field& f, const Grid1D& g, int k) {
  if (k < 0) throw Error(ErrorKind::InvalidArgument, "mode index must be >= 0");
  const double s = g.weights().dot(f.cwiseProduct(cosine_mode(g, k)));
  return (k == 0 ? 1.0 : 2.0) * s / g.L;
}

void solve_tridiagonal(Eigen::VectorXd sub, Eigen::VectorXd diag, Eigen::VectorXd sup,
                       Eigen::VectorXd& rhs) {
  const int n = static_cast<int>(diag.size());
  for (int i = 1; i < n; ++i) {
    const double m = sub[i] / diag[i - 1];
    diag[i] -= m * sup[i - 1];
    rhs[i] -= m * rhs[i - 1];
  }
  rhs[n - 1] /= diag[n - 1];
  for (int i = n - 2; i >= 0; --i) rhs[i] = (rhs[i] - sup[i] * rhs[i + 1]) / diag[i];
}

}  // namespace chemotax
