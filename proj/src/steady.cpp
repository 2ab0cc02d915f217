#include "chemotax/steady.hpp"

#include "chemotax/continuation.hpp"
#include "chemotax/error.hpp"
#include "chemotax/stability.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <vector>

namespace chemotax {
namespace {

using SpMat = Eigen::SparseMatrix<double>;

Eigen::VectorXd residual_vector(const StationaryEval& e) {
  const int n = static_cast<int>(e.ru.size());
  Eigen::VectorXd r(2 * n);
  for (int j = 0; j < n; ++j) {
    r[iu(j)] = e.ru[j];
    r[iv(j)] = e.rv[j];
  }
  return r;
}

Eigen::VectorXd chi_column(const StationaryEval& e) {
  const int n = static_cast<int>(e.ru.size());
  Eigen::VectorXd c = Eigen::VectorXd::Zero(2 * n);
  for (int j = 0; j < n; ++j) c[iu(j)] = e.dru_dchi[j];
  return c;
}

}  // namespace

State newton_solve(const State& guess, const ModelParams& p, double tol, NewtonReport* report,
                   int max_iter) {
  if (!guess.finite()) throw Error(ErrorKind::InvalidArgument, "Newton guess is not finite");
  State s = guess;
  StationaryEval e = stationary_residual(s, p);
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
    const Eigen::VectorXd dx = sparse_solve(stationary_jacobian(s, p), -residual_vector(e));
    const Eigen::VectorXd x0 = pack(s);
    double step = 1;
    State trial = s;
    StationaryEval et;
    for (int h = 0; h <= 8; ++h) {
      unpack(x0 + step * dx, trial);
      et = stationary_residual(trial, p);
      if (et.norm() < res || h == 8) break;
      step /= 2;
    }
    stalled = roundoff_step(dx, x0);
    prev = res;
    s = trial;
    e = et;
  }
  throw Error(ErrorKind::NewtonDiverged,
              "no convergence in " + std::to_string(max_iter) + " iterations, residual " +
                  std::to_string(e.norm()));
}

State branch_switch(const ModelParams& p, int k, double s, const Grid1D& g) {
  const Point2 c = coexistence_state(p);
  const auto b = chi_k_at(p, k, neumann_eigenvalue_h(k, g.L, g.n));
  const Field m = cosine_mode(g, k);
  State st(g, Field::Constant(g.n, c.u) + s * b.Q_k * m, Field::Constant(g.n, c.v) + s * m);
  return st;
}

Eigen::VectorXcd linearization_spectrum(const State& s, const ModelParams& p) {
  Eigen::MatrixXd J = Eigen::MatrixXd(stationary_jacobian(s, p));
  const int n = s.grid.n;
  if (p.tau > 0) {
    if (p.tau != 1)
      for (int j = 0; j < n; ++j) J.row(iv(j)) /= p.tau;
    Eigen::EigenSolver<Eigen::MatrixXd> es(J, false);
    return es.eigenvalues();
  }
  // tau = 0: v is slaved to u through the elliptic rows; Schur complement.
  Eigen::MatrixXd Juu(n, n), Juv(n, n), Jvu(n, n), Jvv(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      Juu(a, b) = J(iu(a), iu(b));
      Juv(a, b) = J(iu(a), iv(b));
      Jvu(a, b) = J(iv(a), iu(b));
      Jvv(a, b) = J(iv(a), iv(b));
    }
  const Eigen::MatrixXd red = Juu - Juv * Jvv.partialPivLu().solve(Jvu);
  Eigen::EigenSolver<Eigen::MatrixXd> es(red, false);
  return es.eigenvalues();
}

double leading_real_part(const State& s, const ModelParams& p) {
  const Eigen::VectorXcd ev = linearization_spectrum(s, p);
  double m = -1e300;
  for (int i = 0; i < ev.size(); ++i) m = std::max(m, ev[i].real());
  return m;
}

Branch continue_branch(const ModelParams& p0, int k, std::pair<double, double> chi_span, double ds,
                       const ContinueOptions& opt) {
  if (!(ds > 0)) throw Error(ErrorKind::InvalidArgument, "ds must be > 0");
  const auto bp = chi_k(p0, k);
  const double lo = std::min(chi_span.first, chi_span.second);
  const double hi = std::max(chi_span.first, chi_span.second);
  if (!(bp.chi_k > lo && bp.chi_k < hi))
    throw Error(ErrorKind::BracketMiss, "chi_k = " + std::to_string(bp.chi_k) + " outside span");
  const Grid1D g(opt.n, p0.L);
  const Point2 c = coexistence_state(p0);
  Branch br;
  br.k = k;
  br.chi_onset = bp.chi_k;
  br.chi_onset_h = chi_k_at(p0, k, neumann_eigenvalue_h(k, g.L, g.n)).chi_k;

  State work = State::constant(g, c.u, c.v);
  ParametrizedSystem sys;
  sys.residual = [&](const Eigen::VectorXd& y, double chi, RoundingLevel& rl) {
    ModelParams p = p0;
    p.chi = chi;
    unpack(y, work);
    const StationaryEval e = stationary_residual(work, p);
    rl = {e.roundoff, e.floor};
    return residual_vector(e);
  };
  sys.jacobian = [&](const Eigen::VectorXd& y, double chi) {
    ModelParams p = p0;
    p.chi = chi;
    unpack(y, work);
    return stationary_jacobian(work, p);
  };
  sys.dmu = [&](const Eigen::VectorXd& y, double chi) {
    ModelParams p = p0;
    p.chi = chi;
    unpack(y, work);
    return chi_column(stationary_residual(work, p));
  };

  const int m = 2 * g.n;
  Eigen::VectorXd amp_row = Eigen::VectorXd::Zero(m);
  {
    const Field w = g.weights(), cs = cosine_mode(g, k);
    for (int j = 0; j < g.n; ++j) amp_row[iv(j)] = 2 * w[j] * cs[j] / g.L;
  }

  // Two amplitude-constrained points seed the secant predictor.
  ContinuationPoint seeds[2];
  for (int i = 0; i < 2; ++i) {
    const double a = opt.direction * (i + 1) * ds;
    Eigen::VectorXd y = pack(branch_switch(p0, k, a, g));
    double chi = br.chi_onset_h;
    CorrectInfo info;
    if (!correct(sys, y, chi, amp_row, 0.0, a + amp_row.dot(pack(State::constant(g, c.u, c.v))),
                 info, 1e-12, 30)) {
      br.termination = "NewtonDiverged at branch switch";
      return br;
    }
    seeds[i] = {y, chi, info.residual};
  }

  ArclengthOptions ao;
  ao.ds = ds;
  ao.ds_max = opt.ds_max_factor * ds;
  ao.ds_min = ds / 1024;
  ao.mu_weight = 1.0 / (1.0 + std::abs(br.chi_onset_h));
  ao.mu_lo = lo;
  ao.mu_hi = hi;
  ao.max_points = opt.max_points;
  ao.max_folds = opt.max_folds;
  auto positive = [&](const ContinuationPoint& pt) { return pt.y.minCoeff() >= 0; };
  const ArclengthRun run = arclength(sys, seeds[0], seeds[1], ao, positive);
  br.folds = run.folds;
  br.termination = run.termination == "rejected" ? "positivity lost" : run.termination;

  for (const auto& pt : run.points) {
    BranchPoint bpnt;
    bpnt.chi = pt.mu;
    bpnt.state = State::constant(g, c.u, c.v);
    unpack(pt.y, bpnt.state);
    bpnt.amplitude = mode_amplitude(bpnt.state.v - Field::Constant(g.n, c.v), g, k);
    bpnt.residual = pt.residual;
    if (opt.stability) {
      ModelParams p = p0;
      p.chi = pt.mu;
      bpnt.leading_eig = leading_real_part(bpnt.state, p);
      bpnt.stable = bpnt.leading_eig < 1e-8;
    }
    br.points.push_back(std::move(bpnt));
  }
  return br;
}

PitchforkFit fit_pitchfork(const std::vector<std::pair<double, double>>& samples, int min_points) {
  if (static_cast<int>(samples.size()) < min_points)
    throw Error(ErrorKind::InvalidArgument, "too few small-amplitude branch points to fit");
  Eigen::MatrixXd A(samples.size(), 4);
  Eigen::VectorXd y(samples.size());
  for (size_t i = 0; i < samples.size(); ++i) {
    const double a = samples[i].first;
    A.row(i) << a, a * a, a * a * a, a * a * a * a;
    y[i] = samples[i].second;
  }
  const Eigen::VectorXd c = A.colPivHouseholderQr().solve(y);
  return {c[0], c[1], static_cast<int>(samples.size())};
}

namespace {
void collect(const Branch& b, double a_max, std::vector<std::pair<double, double>>& out) {
  for (const auto& pt : b.points) {
    if (std::abs(pt.amplitude) > a_max) break;
    out.emplace_back(pt.amplitude, pt.chi - b.chi_onset_h);
  }
}
}  // namespace

PitchforkFit fit_pitchfork(const Branch& b, double a_max, int min_points) {
  std::vector<std::pair<double, double>> s;
  collect(b, a_max, s);
  return fit_pitchfork(s, min_points);
}

PitchforkFit fit_pitchfork(const Branch& up, const Branch& down, double a_max, int min_points) {
  std::vector<std::pair<double, double>> s;
  collect(up, a_max, s);
  collect(down, a_max, s);
  return fit_pitchfork(s, min_points);
}

}  // namespace chemotax
