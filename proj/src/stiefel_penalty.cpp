#include "dscofs/stiefel_penalty.hpp"

#include <cmath>
#include <deque>
#include <stdexcept>

namespace dscofs {

double bb_step(const Matrix& dX, const Matrix& dD, BbKind kind, double floor_,
               double cap, double fallback) {
  const double sy = std::abs((dX.cwiseProduct(dD)).sum());
  double step;
  if (kind == BbKind::BB1) {
    if (sy <= 0.0) return fallback;
    step = dX.squaredNorm() / sy;
  } else {
    const double dd = dD.squaredNorm();
    if (dd <= 0.0) return fallback;
    step = sy / dd;
  }
  if (!std::isfinite(step) || step <= 0.0) return fallback;
  return std::min(std::max(step, floor_), cap);
}

Matrix project_ball(const Matrix& Xhat, double rho) {
  if (rho <= 0) throw std::invalid_argument("project_ball: rho must be positive");
  const double norm = Xhat.norm();
  if (norm <= rho) return Xhat;
  return (rho / norm) * Xhat;
}

namespace {

// Merit and surrogate gradient from a single Gram product. Matches the
// public merit_value/approx_gradient definitions term for term.
struct PointEval {
  double merit = 0.0;
  Matrix D;
};

PointEval eval_point(const Matrix& X, const SubproblemAnchors& a,
                     const GramOperator& op, const SolverConfig& c) {
  const Matrix gram_x = op.apply(X);
  const double l = -(X.cwiseProduct(gram_x)).sum() +
                   c.mu1 * (X - a.Yk).squaredNorm() +
                   c.mu2 * (X - a.Zk).squaredNorm() +
                   c.tau1 * (X - a.Xk).squaredNorm();
  const Matrix grad_l = -2.0 * gram_x + 2.0 * c.mu1 * (X - a.Yk) +
                        2.0 * c.mu2 * (X - a.Zk) + 2.0 * c.tau1 * (X - a.Xk);
  const Matrix lam = lambda_matrix(X, grad_l);
  Matrix residual = X.transpose() * X;
  residual.diagonal().array() -= 1.0;
  const double g = -0.5 * (lam.cwiseProduct(residual)).sum() +
                   0.25 * c.beta * residual.squaredNorm();
  PointEval out;
  out.merit = l + g;
  out.D = grad_l - X * lam + c.beta * (X * residual);
  return out;
}

}  // namespace

Matrix solve_x_subproblem(const GramOperator& op, const Matrix& Xk,
                          const Matrix& Yk, const Matrix& Zk,
                          const SolverConfig& config, InnerReport* report) {
  const SubproblemAnchors anchors{Xk, Yk, Zk};
  const double rho = config.rho;
  constexpr double kStepFloor = 1e-10;
  constexpr double kStepCap = 1e10;
  constexpr int kMaxBacktracks = 20;
  constexpr int kMeritWindow = 5;

  Matrix X = project_ball(Xk, rho);
  PointEval at = eval_point(X, anchors, op, config);
  const double d0 = at.D.norm();
  const double stop_level = config.inner_tol * std::max(1.0, d0);

  std::deque<double> recent{at.merit};
  double eta = 1.0 / std::max(1.0, d0);
  InnerReport rep;
  rep.initial_grad_norm = d0;
  rep.max_iterate_norm = X.norm();

  int iter = 0;
  double grad_norm = d0;
  while (grad_norm > stop_level && iter < config.inner_max_iter) {
    const double h_ref = *std::max_element(recent.begin(), recent.end());
    Matrix X_trial;
    PointEval trial;
    bool accepted = false;
    for (int t = 0; t <= kMaxBacktracks; ++t) {
      X_trial = project_ball(X - eta * at.D, rho);
      trial = eval_point(X_trial, anchors, op, config);
      if (!std::isfinite(trial.merit)) {
        throw NumericalError(
            "solve_x_subproblem: non-finite merit at inner iteration " +
            std::to_string(iter));
      }
      if (trial.merit < h_ref) {
        accepted = true;
        break;
      }
      eta *= 0.5;
    }
    if (!accepted) break;  // no progress at the smallest step: treat as stationary

    const Matrix dX = X_trial - X;
    const Matrix dD = trial.D - at.D;
    X = std::move(X_trial);
    at = std::move(trial);
    grad_norm = at.D.norm();
    rep.max_iterate_norm = std::max(rep.max_iterate_norm, X.norm());
    recent.push_back(at.merit);
    if (static_cast<int>(recent.size()) > kMeritWindow) recent.pop_front();

    const BbKind kind = (iter % 2 == 0) ? BbKind::BB1 : BbKind::BB2;
    eta = bb_step(dX, dD, kind, kStepFloor, kStepCap, eta);
    ++iter;
  }

  rep.iterations = iter;
  rep.final_grad_norm = grad_norm;
  rep.final_merit = at.merit;
  Matrix residual = X.transpose() * X;
  residual.diagonal().array() -= 1.0;
  rep.orth_residual = residual.norm();
  rep.converged = rep.final_grad_norm <= stop_level;
  if (report) *report = rep;
  return X;
}

Matrix solve_x_subproblem(const DataMatrix& A, const Matrix& Xk,
                          const Matrix& Yk, const Matrix& Zk,
                          const SolverConfig& config, InnerReport* report) {
  GramOperator op(A.values);
  return solve_x_subproblem(op, Xk, Yk, Zk, config, report);
}

}  // namespace dscofs
