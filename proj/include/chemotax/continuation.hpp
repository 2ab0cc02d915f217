#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>
#include <functional>
#include <string>
#include <vector>

namespace chemotax {

// roundoff: residual level that counts as converged outright.
// floor: level accepted once Newton stops making progress.
struct RoundingLevel {
  double roundoff = 0, floor = 0;
};

// F(y, mu) = 0 with a sparse Jacobian in y and a dense column dF/dmu.
struct ParametrizedSystem {
  std::function<Eigen::VectorXd(const Eigen::VectorXd& y, double mu, RoundingLevel& rl)> residual;
  std::function<Eigen::SparseMatrix<double>(const Eigen::VectorXd& y, double mu)> jacobian;
  std::function<Eigen::VectorXd(const Eigen::VectorXd& y, double mu)> dmu;
};

Eigen::VectorXd sparse_solve(const Eigen::SparseMatrix<double>& A, const Eigen::VectorXd& b);

// Newton update already at the rounding level of the iterate: further steps
// only shuffle the last bits, so the iteration has stagnated at its floor.
bool roundoff_step(const Eigen::VectorXd& d, const Eigen::VectorXd& x);
Eigen::SparseMatrix<double> bordered(const Eigen::SparseMatrix<double>& J, const Eigen::VectorXd& col,
                                     const Eigen::VectorXd& row, double corner);

struct CorrectInfo {
  int iterations = 0;
  double residual = 0;
};

// Newton on F = 0 together with row_y.y + row_mu mu = target.
bool correct(const ParametrizedSystem& sys, Eigen::VectorXd& y, double& mu,
             const Eigen::VectorXd& row_y, double row_mu, double target, CorrectInfo& info,
             double tol = 1e-12, int max_it = 15);

struct ContinuationPoint {
  Eigen::VectorXd y;
  double mu = 0;
  double residual = 0;
};

struct ArclengthOptions {
  double ds = 1e-2;
  double ds_max = 4e-2;
  double ds_min = 1e-5;
  double mu_weight = 1;  // weight of mu in the arclength inner product
  double mu_lo = -1e300, mu_hi = 1e300;
  int max_points = 500;
  int max_folds = 4;
  double tol = 1e-12;
};

struct ArclengthRun {
  std::vector<ContinuationPoint> points;  // includes the two seeds
  std::vector<int> folds;
  std::string termination;
};

// Secant predictor, pseudo-arclength corrector. accept() may veto a point
// (returning false ends the run with termination "rejected").
ArclengthRun arclength(const ParametrizedSystem& sys, const ContinuationPoint& seed0,
                       const ContinuationPoint& seed1, const ArclengthOptions& opt,
                       const std::function<bool(const ContinuationPoint&)>& accept = {});

}  // namespace chemotax
