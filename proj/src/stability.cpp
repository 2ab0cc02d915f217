#include "chemotax/stability.hpp"

#include "chemotax/error.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace chemotax {

double neumann_eigenvalue(int k, double L) {
  const double q = k * std::numbers::pi / L;
  return q * q;
}

double neumann_eigenvalue_h(int k, double L, int n) {
  const double h = L / (n - 1);
  const double s = std::sin(k * std::numbers::pi * h / (2 * L));
  return 4.0 / (h * h) * s * s;
}

ModeMatrix mode_matrix_at(const ModelParams& p, int k, double Lambda) {
  if (k <= 0) throw Error(ErrorKind::KZero, "wavenumber index must be >= 1");
  const Point2 c = coexistence_state(p);
  const double ph = phi(p.sensitivity, c.v);
  ModeMatrix m;
  m.k = k;
  m.Lambda = Lambda;
  m.m11 = -p.D1 * Lambda - p.b1 * c.u;
  m.m12 = -p.chi * c.u * ph * Lambda - p.c1 * c.u;
  m.m21 = -p.b2 * c.v;
  m.m22 = -p.D2 * Lambda - p.c2 * c.v;
  return m;
}

ModeMatrix mode_matrix(const ModelParams& p, int k) {
  return mode_matrix_at(p, k, neumann_eigenvalue(k, p.L));
}

BifurcationPoint chi_k_at(const ModelParams& p, int k, double Lambda) {
  if (k == 0) throw Error(ErrorKind::KZero, "k = 0 carries no bifurcation");
  if (k < 0) throw Error(ErrorKind::InvalidArgument, "k must be positive");
  const Point2 c = coexistence_state(p);
  const double ph = phi(p.sensitivity, c.v);
  if (ph == 0) throw Error(ErrorKind::ZeroSensitivity, "phi(vbar) = 0");
  const double a = p.D1 * Lambda + p.b1 * c.u;
  const double d = p.D2 * Lambda + p.c2 * c.v;
  const double num = a * d - p.b2 * p.c1 * c.u * c.v;
  BifurcationPoint b;
  b.k = k;
  b.chi_k = num / (p.b2 * Lambda * ph * c.u * c.v);
  b.Q_k = -d / (p.b2 * c.v);
  b.feasible = num > 0;
  return b;
}

BifurcationPoint chi_k(const ModelParams& p, int k) {
  if (k == 0) throw Error(ErrorKind::KZero, "k = 0 carries no bifurcation");
  return chi_k_at(p, k, neumann_eigenvalue(k, p.L));
}

Threshold chi_threshold(const ModelParams& p, int k_max) {
  if (k_max < 1) throw Error(ErrorKind::InvalidArgument, "k_max must be >= 1");
  Threshold t;
  std::vector<double> vals(k_max + 1, 0.0);
  std::vector<bool> feas(k_max + 1, false);
  for (int k = 1; k <= k_max; ++k) {
    const auto b = chi_k(p, k);
    vals[k] = b.chi_k;
    feas[k] = b.feasible;
    if (b.feasible && (t.k0 == 0 || b.chi_k < t.chi0)) {
      t.chi0 = b.chi_k;
      t.k0 = k;
    }
  }
  if (t.k0 == 0) throw Error(ErrorKind::NoFeasibleMode, "no feasible mode in [1, k_max]");
  for (int k = 1; k <= k_max; ++k) {
    if (k != t.k0 && feas[k] && std::abs(vals[k] - t.chi0) <= 1e-12 * std::abs(t.chi0)) {
      std::ostringstream s;
      s << "chi_" << k << " equals chi_" << t.k0 << " within 1e-12";
      t.warnings.push_back(s.str());
    }
  }
  for (int k = t.k0 + 1; k < k_max; ++k) {
    if (feas[k] && feas[k + 1] && !(vals[k + 1] > vals[k])) {
      t.warnings.push_back("chi_k not increasing beyond the minimum; k_max may be too small");
      break;
    }
  }
  return t;
}

std::pair<std::complex<double>, std::complex<double>> eigenvalues(const ModeMatrix& m) {
  const double tr = m.trace(), det = m.det();
  const double disc = tr * tr / 4 - det;
  using C = std::complex<double>;
  if (disc >= 0) {
    const double sq = std::sqrt(disc);
    // avoid cancellation in the smaller root
    const double big = tr / 2 + (tr >= 0 ? sq : -sq);
    const double other = big != 0 ? det / big : 0.0;
    const double l1 = std::max(big, other), l2 = std::min(big, other);
    return {C(l1, 0), C(l2, 0)};
  }
  const double im = std::sqrt(-disc);
  return {C(tr / 2, im), C(tr / 2, -im)};
}

std::pair<std::complex<double>, std::complex<double>> growth_rate(const ModelParams& p, int k) {
  return eigenvalues(mode_matrix(p, k));
}

}  // namespace chemotax
