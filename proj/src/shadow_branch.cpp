#include "chemotax/continuation.hpp"
#include "chemotax/error.hpp"
#include "chemotax/shadow.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace chemotax {

ShadowBranch shadow_branch(const ShadowParams& sp0, int n, std::pair<double, double> eps_span,
                           double ds, const ShadowBranchOptions& opt) {
  if (!(ds > 0)) throw Error(ErrorKind::InvalidArgument, "ds must be > 0");
  const Grid1D g(opt.nodes, sp0.L);
  ShadowBranch br;
  br.n = n;
  br.eps_onset = epsilon_n(sp0, n);
  br.eps_onset_h = epsilon_n_h(sp0, n, g);
  const double lo = std::min(eps_span.first, eps_span.second);
  const double hi = std::max(eps_span.first, eps_span.second);
  if (!(br.eps_onset > lo && br.eps_onset < hi))
    throw Error(ErrorKind::BracketMiss, "eps_n outside span");
  const auto [vb, lb] = shadow_equilibrium(sp0);
  const int m = g.n;

  ShadowState work{g, Field::Constant(m, vb), lb, sp0.eps};
  auto load = [&](const Eigen::VectorXd& y, double eps) {
    work.v = y.head(m);
    work.lambda = y[m];
    work.eps = eps;
  };
  ParametrizedSystem sys;
  sys.residual = [&](const Eigen::VectorXd& y, double eps, RoundingLevel& rl) {
    load(y, eps);
    ShadowParams sp = sp0;
    sp.eps = eps;
    const ShadowResidual r = shadow_residual(work, sp);
    rl = {r.roundoff, r.floor};
    Eigen::VectorXd F(m + 1);
    F << r.r, r.constraint;
    return F;
  };
  sys.jacobian = [&](const Eigen::VectorXd& y, double eps) {
    load(y, eps);
    ShadowParams sp = sp0;
    sp.eps = eps;
    return shadow_jacobian(work, sp);
  };
  sys.dmu = [&](const Eigen::VectorXd& y, double eps) {
    load(y, eps);
    const Field w = g.weights();
    const double h = g.h();
    Eigen::VectorXd c = Eigen::VectorXd::Zero(m + 1);
    for (int j = 0; j + 1 < m; ++j) {
      const double F = (y[j + 1] - y[j]) / h;
      c[j] += F / w[j];
      c[j + 1] -= F / w[j + 1];
    }
    return c;
  };

  Eigen::VectorXd amp_row = Eigen::VectorXd::Zero(m + 1);
  const Field cs = cosine_mode(g, n);
  {
    const Field w = g.weights();
    for (int j = 0; j < m; ++j) amp_row[j] = 2 * w[j] * cs[j] / g.L;
  }
  const double amp_base = amp_row.head(m).dot(Field::Constant(m, vb));

  ContinuationPoint seeds[2];
  for (int i = 0; i < 2; ++i) {
    const double a = opt.direction * (i + 1) * ds;
    Eigen::VectorXd y(m + 1);
    y << Field::Constant(m, vb) + a * cs, lb;
    double eps = br.eps_onset_h;
    CorrectInfo info;
    if (!correct(sys, y, eps, amp_row, 0.0, a + amp_base, info, 1e-10, 30)) {
      br.termination = "NewtonDiverged at branch switch";
      return br;
    }
    seeds[i] = {y, eps, info.residual};
  }

  ArclengthOptions ao;
  ao.ds = ds;
  ao.ds_max = opt.ds_max_factor * ds;
  ao.ds_min = ds / 1024;
  ao.mu_weight = 1.0 / br.eps_onset_h;
  ao.mu_lo = lo;
  ao.mu_hi = hi;
  ao.max_points = opt.max_points;
  ao.tol = 1e-10;
  auto admissible = [&](const ContinuationPoint& pt) {
    return pt.y.head(m).minCoeff() >= 0 && pt.y[m] > 0;
  };
  const ArclengthRun run = arclength(sys, seeds[0], seeds[1], ao, admissible);
  br.folds = run.folds;
  br.termination = run.termination == "rejected" ? "positivity lost" : run.termination;

  for (const auto& pt : run.points) {
    ShadowBranchPoint bp;
    bp.eps = pt.mu;
    bp.state = ShadowState{g, pt.y.head(m), pt.y[m], pt.mu};
    bp.amplitude = mode_amplitude(bp.state.v - Field::Constant(m, vb), g, n);
    bp.residual = pt.residual;
    if (opt.stability) {
      ShadowParams sp = sp0;
      sp.eps = pt.mu;
      bp.leading_eig = shadow_linearization_spectrum(bp.state, sp, 1).front().real();
      bp.stable = bp.leading_eig < 1e-8;
    }
    br.points.push_back(std::move(bp));
  }
  return br;
}

namespace {
void collect(const ShadowBranch& b, double a_max, std::vector<std::pair<double, double>>& out) {
  for (const auto& pt : b.points) {
    if (std::abs(pt.amplitude) > a_max) break;
    out.emplace_back(pt.amplitude, pt.eps - b.eps_onset_h);
  }
}
}  // namespace

PitchforkFit fit_shadow_pitchfork(const ShadowBranch& b, double a_max, int min_points) {
  std::vector<std::pair<double, double>> s;
  collect(b, a_max, s);
  return fit_pitchfork(s, min_points);
}

PitchforkFit fit_shadow_pitchfork(const ShadowBranch& up, const ShadowBranch& down, double a_max,
                                  int min_points) {
  std::vector<std::pair<double, double>> s;
  collect(up, a_max, s);
  collect(down, a_max, s);
  return fit_pitchfork(s, min_points);
}

}  // namespace chemotax
