#include "dscofs/solver.hpp"

#include <chrono>
#include <cmath>
#include <iostream>
#include <stdexcept>

#include "dscofs/prox_ops.hpp"
#include "dscofs/stiefel_penalty.hpp"

namespace dscofs {

Matrix polar_retract(const Matrix& X) {
  Eigen::JacobiSVD<Matrix> svd(X, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return svd.matrixU() * svd.matrixV().transpose();
}

namespace {

Matrix gaussian_matrix(Eigen::Index d, Eigen::Index m, Rng& rng) {
  Matrix G(d, m);
  for (Eigen::Index j = 0; j < m; ++j)
    for (Eigen::Index i = 0; i < d; ++i) G(i, j) = rng.normal();
  return G;
}

}  // namespace

Matrix init_orthogonal(Eigen::Index d, int m, const GramOperator& op,
                       int restarts, Rng& rng) {
  if (m > d) throw std::invalid_argument("init_orthogonal: m exceeds d");
  if (restarts < 1) throw std::invalid_argument("init_orthogonal: restarts >= 1");
  Matrix best;
  double best_value = 0.0;
  for (int t = 0; t < restarts; ++t) {
    Matrix G = gaussian_matrix(d, m, rng);
    Eigen::HouseholderQR<Matrix> qr(G);
    Matrix Q = qr.householderQ() * Matrix::Identity(d, m);
    const double value = -(Q.cwiseProduct(op.apply(Q))).sum();
    if (t == 0 || value < best_value) {
      best_value = value;
      best = Q;
    }
  }
  return best;
}

Matrix init_orthogonal(Eigen::Index d, int m, const DataMatrix& A,
                       int restarts, Rng& rng) {
  GramOperator op(A.values);
  return init_orthogonal(d, m, op, restarts, rng);
}

bool check_stop(double f_prev, double f_curr, double tol) {
  if (!std::isfinite(f_prev) || !std::isfinite(f_curr)) {
    throw std::invalid_argument("check_stop: non-finite objective");
  }
  return std::abs(f_curr - f_prev) / (1.0 + std::abs(f_prev)) <= tol;
}

SolverConfig resolve_config(const DataMatrix& A, SolverConfig c) {
  const Eigen::Index d = A.d();
  if (c.m <= 0 || c.m > d) {
    throw std::invalid_argument("resolve_config: need 1 <= m <= d");
  }
  if (c.r <= 0 || c.r > d) {
    throw std::invalid_argument("resolve_config: need 1 <= r <= d");
  }
  if (c.rho <= 0) c.rho = 1.5 * std::sqrt(static_cast<double>(c.m));
  if (c.rho <= std::sqrt(static_cast<double>(c.m))) {
    throw std::invalid_argument("resolve_config: rho must exceed sqrt(m)");
  }
  GramOperator op(A.values);
  // Data-adaptive couplings: a fixed absolute weight is meaningless across
  // data scales, so tie the defaults to the average per-feature energy.
  const double energy = op.trace() / static_cast<double>(d);
  if (!std::isfinite(energy)) {
    throw NumericalError("resolve_config: data energy overflows");
  }
  if (c.mu1 <= 0) c.mu1 = 0.1 * std::max(energy, 1e-300);
  if (c.mu2 <= 0) c.mu2 = 2.5 * std::max(energy, 1e-300);
  if (c.tau1 <= 0 || c.tau2 <= 0 || c.tau3 <= 0) {
    throw std::invalid_argument("resolve_config: tau weights must be positive");
  }
  if (c.s <= 0) {
    if (!(c.alpha > 0.0 && c.alpha <= 1.0)) {
      throw std::invalid_argument("resolve_config: alpha must lie in (0, 1]");
    }
    c.s = std::lround(c.alpha * static_cast<double>(d) * c.m);
  }
  c.s = std::min<long>(std::max<long>(c.s, 1), static_cast<long>(d) * c.m);
  if (c.s < c.r) {
    std::cerr << "warning: element budget s=" << c.s << " below row budget r="
              << c.r << "; the row constraint cannot be met without penalty\n";
  }
  if (c.beta <= 0) {
    c.beta = 1.05 * beta_lower_bound(op, c).beta_min;
  } else {
    const double beta_min = beta_lower_bound(op, c).beta_min;
    if (c.beta < beta_min) {
      std::cerr << "warning: beta=" << c.beta
                << " is below the analytic threshold " << beta_min << "\n";
    }
  }
  if (c.max_outer_iter < 1 || c.inner_max_iter < 1 || c.restarts < 1) {
    throw std::invalid_argument("resolve_config: iteration counts must be >= 1");
  }
  return c;
}

SolveResult run(const DataMatrix& A, const SolverConfig& config) {
  const auto t_start = std::chrono::steady_clock::now();
  const SolverConfig c = resolve_config(A, config);
  const Eigen::Index d = A.d();

  {
    // centered-input check: feature means should vanish
    const double scale = 1.0 + A.values.cwiseAbs().maxCoeff();
    const double worst = A.values.rowwise().mean().cwiseAbs().maxCoeff();
    if (worst > 1e-6 * scale) {
      throw std::invalid_argument(
          "run: data is not centered; call center_columns first");
    }
  }

  GramOperator op(A.values);
  Rng rng(c.rng_seed);
  Matrix X = init_orthogonal(d, c.m, op, c.restarts, rng);
  // Zero auxiliary start: both budgets hold trivially and the first X-update
  // sees a constant coupling term on the manifold.
  Matrix Y = Matrix::Zero(d, c.m);
  Matrix Z = Matrix::Zero(d, c.m);

  SolveResult res;
  res.resolved = c;
  double f = objective_value(X, Y, Z, op, c.mu1, c.mu2);
  res.objective_trace.push_back(f);

  for (int k = 0; k < c.max_outer_iter; ++k) {
    const Matrix Xk = X, Yk = Y, Zk = Z;
    const SubproblemAnchors anchors{Xk, Yk, Zk};

    InnerReport inner;
    Matrix X_inner = solve_x_subproblem(op, Xk, Yk, Zk, c, &inner);
    res.retraction_residual.push_back(inner.orth_residual);
    Matrix X_next = polar_retract(X_inner);
    // Keep the previous iterate if the retracted solution failed to improve
    // the subproblem objective; the decrease chain then holds with equality.
    if (prox_quadratic(X_next, anchors, op, c) >
        prox_quadratic(Xk, anchors, op, c)) {
      X_next = Xk;
    }

    X = X_next;
    Y = y_update(X, Yk, c.tau2, c.s);
    Z = z_update(X, Zk, c.tau3, c.r);

    const double f_next = objective_value(X, Y, Z, op, c.mu1, c.mu2);
    if (!std::isfinite(f_next)) {
      throw NumericalError("run: non-finite objective at outer iteration " +
                           std::to_string(k));
    }
    const double dx2 = (X - Xk).squaredNorm();
    const double dy2 = (Y - Yk).squaredNorm();
    const double dz2 = (Z - Zk).squaredNorm();
    res.iterate_gap_trace.push_back(std::sqrt(dx2 + dy2 + dz2));
    res.decrease_slack_trace.push_back(
        f_next + c.tau1 * dx2 + c.tau2 * dy2 + c.tau3 * dz2 - f);
    res.objective_trace.push_back(f_next);
    res.outer_iters = k + 1;

    const bool stop = check_stop(f, f_next, c.outer_tol);
    f = f_next;
    if (stop) {
      res.converged = true;
      break;
    }
  }

  res.X = X;
  res.Y = Y;
  res.Z = Z;
  res.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
          .count();
  return res;
}

ConvergenceDiagnostics convergence_diagnostics(const SolveResult& result,
                                               const SolverConfig& config) {
  ConvergenceDiagnostics diag;
  for (double v : result.decrease_slack_trace) {
    diag.max_decrease_violation = std::max(diag.max_decrease_violation, v);
  }
  if (!result.iterate_gap_trace.empty()) {
    diag.final_gap = result.iterate_gap_trace.back();
  }
  const double tau =
      2.0 * std::max({config.tau1, config.tau2, config.tau3});
  diag.subgradient_bound = tau * diag.final_gap;
  return diag;
}

}  // namespace dscofs
