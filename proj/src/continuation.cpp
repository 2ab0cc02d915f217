#include "chemotax/continuation.hpp"

#include "chemotax/error.hpp"

#include <Eigen/SparseLU>
#include <cmath>
#include <limits>

namespace chemotax {

using SpMat = Eigen::SparseMatrix<double>;

Eigen::VectorXd sparse_solve(const SpMat& A, const Eigen::VectorXd& b) {
  Eigen::SparseLU<SpMat, Eigen::COLAMDOrdering<int>> lu;
  lu.analyzePattern(A);
  lu.factorize(A);
  if (lu.info() != Eigen::Success) throw Error(ErrorKind::SingularJacobian, "sparse LU failed");
  Eigen::VectorXd x = lu.solve(b);
  if (!x.allFinite()) throw Error(ErrorKind::SingularJacobian, "non-finite Newton step");
  return x;
}

bool roundoff_step(const Eigen::VectorXd& d, const Eigen::VectorXd& x) {
  return d.lpNorm<Eigen::Infinity>() <=
         8 * std::numeric_limits<double>::epsilon() * std::max(1.0, x.lpNorm<Eigen::Infinity>());
}

SpMat bordered(const SpMat& J, const Eigen::VectorXd& c, const Eigen::VectorXd& r, double d) {
  const int m = static_cast<int>(J.rows());
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(J.nonZeros() + 2 * m + 1);
  for (int col = 0; col < J.outerSize(); ++col)
    for (SpMat::InnerIterator it(J, col); it; ++it) t.emplace_back(it.row(), it.col(), it.value());
  for (int i = 0; i < m; ++i) {
    if (c[i] != 0) t.emplace_back(i, m, c[i]);
    if (r[i] != 0) t.emplace_back(m, i, r[i]);
  }
  t.emplace_back(m, m, d);
  SpMat A(m + 1, m + 1);
  A.setFromTriplets(t.begin(), t.end());
  return A;
}

bool correct(const ParametrizedSystem& sys, Eigen::VectorXd& y, double& mu,
             const Eigen::VectorXd& row_y, double row_mu, double target, CorrectInfo& info,
             double tol, int max_it) {
  bool stalled = false;
  double prev = std::numeric_limits<double>::infinity();
  for (int it = 0; it <= max_it; ++it) {
    RoundingLevel rl;
    const Eigen::VectorXd F = sys.residual(y, mu, rl);
    const double res = F.lpNorm<Eigen::Infinity>();
    if (!std::isfinite(res)) return false;
    const double g = row_y.dot(y) + row_mu * mu - target;
    const double gscale = 1e-13 * (row_y.cwiseAbs().dot(y.cwiseAbs()) + std::abs(row_mu * mu) + 1e-300);
    const bool at_floor = res <= std::max(tol, rl.floor) && res > 0.25 * prev;
    if ((res <= std::max(tol, rl.roundoff) || stalled || at_floor) && std::abs(g) <= std::max(gscale, 1e-15)) {
      info = {it, res};
      return true;
    }
    if (it == max_it) break;
    const SpMat A = bordered(sys.jacobian(y, mu), sys.dmu(y, mu), row_y, row_mu);
    Eigen::VectorXd rhs(y.size() + 1);
    rhs << -F, -g;
    Eigen::VectorXd d;
    try {
      d = sparse_solve(A, rhs);
    } catch (const Error&) {
      return false;
    }
    Eigen::VectorXd ymu(y.size() + 1);
    ymu << y, mu;
    stalled = roundoff_step(d, ymu);
    prev = res;
    y += d.head(y.size());
    mu += d[y.size()];
    if (d.head(y.size()).lpNorm<Eigen::Infinity>() > 10) return false;
  }
  return false;
}

ArclengthRun arclength(const ParametrizedSystem& sys, const ContinuationPoint& s0,
                       const ContinuationPoint& s1, const ArclengthOptions& opt,
                       const std::function<bool(const ContinuationPoint&)>& accept) {
  ArclengthRun run;
  run.points = {s0, s1};
  const double m = static_cast<double>(s0.y.size());
  const double w2 = opt.mu_weight * opt.mu_weight;
  auto nrm = [&](const Eigen::VectorXd& dy, double dmu) { return std::sqrt(dy.squaredNorm() / m + w2 * dmu * dmu); };
  double h = opt.ds;
  double prev_dmu = s1.mu - s0.mu;
  while (static_cast<int>(run.points.size()) < opt.max_points) {
    const auto& P0 = run.points[run.points.size() - 2];
    const auto& P1 = run.points.back();
    Eigen::VectorXd ty = P1.y - P0.y;
    double tmu = P1.mu - P0.mu;
    const double n = nrm(ty, tmu);
    ty /= n;
    tmu /= n;
    Eigen::VectorXd y;
    double mu = 0;
    CorrectInfo info;
    for (;;) {
      const Eigen::VectorXd yp = P1.y + h * ty;
      const double mup = P1.mu + h * tmu;
      y = yp;
      mu = mup;
      const Eigen::VectorXd row = ty / m;
      const double rmu = w2 * tmu;
      if (correct(sys, y, mu, row, rmu, row.dot(yp) + rmu * mup, info, opt.tol)) break;
      h /= 2;
      if (h < opt.ds_min) {
        run.termination = "NewtonDiverged";
        return run;
      }
    }
    if (mu < opt.mu_lo || mu > opt.mu_hi) {
      run.termination = "span edge";
      return run;
    }
    ContinuationPoint pt{y, mu, info.residual};
    if (accept && !accept(pt)) {
      run.termination = "rejected";
      return run;
    }
    const double dmu = mu - P1.mu;
    if (dmu * prev_dmu < 0) run.folds.push_back(static_cast<int>(run.points.size()));
    prev_dmu = dmu;
    run.points.push_back(std::move(pt));
    if (static_cast<int>(run.folds.size()) >= opt.max_folds) {
      run.termination = "fold accumulation";
      return run;
    }
    if (info.iterations <= 3) h = std::min(h * 1.5, opt.ds_max);
  }
  run.termination = "max points";
  return run;
}

}  // namespace chemotax
