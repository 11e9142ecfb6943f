#include "dscofs/core_model.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace dscofs {

DataMatrix center_columns(const Matrix& raw) {
  if (raw.cols() < 2) {
    throw std::invalid_argument("center_columns: need at least 2 samples");
  }
  for (Eigen::Index i = 0; i < raw.rows(); ++i) {
    for (Eigen::Index j = 0; j < raw.cols(); ++j) {
      if (!std::isfinite(raw(i, j))) {
        std::ostringstream msg;
        msg << "center_columns: non-finite entry at feature " << i
            << ", sample " << j;
        throw std::invalid_argument(msg.str());
      }
    }
  }
  DataMatrix out;
  out.values = raw.colwise() - raw.rowwise().mean();
  return out;
}

GramOperator::GramOperator(const Matrix& A) : A_(&A), d_(A.rows()) {
  const Eigen::Index d = A.rows(), n = A.cols();
  trace_ = A.squaredNorm();
  // Materialize AA' when the per-apply cost d^2 beats 2*d*n and the dense
  // block stays reasonably small.
  materialized_ = (d <= 2 * n && d <= 2048);
  if (materialized_) {
    gram_ = A * A.transpose();
    if (d <= 3000) {
      Eigen::SelfAdjointEigenSolver<Matrix> es(gram_, Eigen::EigenvaluesOnly);
      spec_bound_ = es.eigenvalues().maxCoeff() * (1.0 + 1e-10) + 1e-300;
    } else {
      spec_bound_ = std::min(gram_.norm(), gram_.cwiseAbs().rowwise().sum().maxCoeff());
    }
  } else {
    if (n <= 3000) {
      Matrix small = A.transpose() * A;  // same nonzero spectrum as AA'
      Eigen::SelfAdjointEigenSolver<Matrix> es(small, Eigen::EigenvaluesOnly);
      spec_bound_ = es.eigenvalues().maxCoeff() * (1.0 + 1e-10) + 1e-300;
    } else {
      spec_bound_ = trace_;  // ||AA'||_2 <= ||A||_F^2
    }
  }
  if (spec_bound_ < 0) spec_bound_ = 0;
}

Matrix GramOperator::apply(const Matrix& X) const {
  if (X.rows() != d_) {
    throw std::invalid_argument("GramOperator::apply: row count mismatch");
  }
  if (materialized_) return gram_ * X;
  return (*A_) * (A_->transpose() * X);
}

namespace {

void check_shapes(const Matrix& X, const Matrix& Y, const Matrix& Z,
                  Eigen::Index d) {
  if (X.rows() != d || Y.rows() != X.rows() || Z.rows() != X.rows() ||
      Y.cols() != X.cols() || Z.cols() != X.cols()) {
    throw std::invalid_argument("objective: conformable d x m blocks required");
  }
}

}  // namespace

double objective_value(const Matrix& X, const Matrix& Y, const Matrix& Z,
                       const GramOperator& op, double mu1, double mu2) {
  check_shapes(X, Y, Z, op.dim());
  const double data = -(X.cwiseProduct(op.apply(X))).sum();
  return data + mu1 * (X - Y).squaredNorm() + mu2 * (X - Z).squaredNorm();
}

double objective_value(const Matrix& X, const Matrix& Y, const Matrix& Z,
                       const DataMatrix& A, double mu1, double mu2) {
  GramOperator op(A.values);
  return objective_value(X, Y, Z, op, mu1, mu2);
}

ObjectiveGradient objective_gradient(const Matrix& X, const Matrix& Y,
                                     const Matrix& Z, const GramOperator& op,
                                     double mu1, double mu2) {
  check_shapes(X, Y, Z, op.dim());
  ObjectiveGradient g;
  g.dX = -2.0 * op.apply(X) + 2.0 * mu1 * (X - Y) + 2.0 * mu2 * (X - Z);
  g.dY = 2.0 * mu1 * (Y - X);
  g.dZ = 2.0 * mu2 * (Z - X);
  return g;
}

ObjectiveGradient objective_gradient(const Matrix& X, const Matrix& Y,
                                     const Matrix& Z, const DataMatrix& A,
                                     double mu1, double mu2) {
  GramOperator op(A.values);
  return objective_gradient(X, Y, Z, op, mu1, mu2);
}

Matrix lambda_matrix(const Matrix& X, const Matrix& grad_l) {
  if (X.rows() != grad_l.rows() || X.cols() != grad_l.cols()) {
    throw std::invalid_argument("lambda_matrix: shape mismatch");
  }
  Matrix lam = 0.5 * (X.transpose() * grad_l + grad_l.transpose() * X);
  lam = 0.5 * (lam + lam.transpose()).eval();
  return lam;
}

double prox_quadratic(const Matrix& X, const SubproblemAnchors& a,
                      const GramOperator& op, const SolverConfig& c) {
  const double data = -(X.cwiseProduct(op.apply(X))).sum();
  return data + c.mu1 * (X - a.Yk).squaredNorm() +
         c.mu2 * (X - a.Zk).squaredNorm() + c.tau1 * (X - a.Xk).squaredNorm();
}

Matrix prox_quadratic_gradient(const Matrix& X, const SubproblemAnchors& a,
                               const GramOperator& op, const SolverConfig& c) {
  return -2.0 * op.apply(X) + 2.0 * c.mu1 * (X - a.Yk) +
         2.0 * c.mu2 * (X - a.Zk) + 2.0 * c.tau1 * (X - a.Xk);
}

double penalty_term(const Matrix& X, const SubproblemAnchors& a,
                    const GramOperator& op, const SolverConfig& c) {
  const Matrix grad_l = prox_quadratic_gradient(X, a, op, c);
  const Matrix lam = lambda_matrix(X, grad_l);
  Matrix residual = X.transpose() * X;
  residual.diagonal().array() -= 1.0;
  return -0.5 * (lam.cwiseProduct(residual)).sum() +
         0.25 * c.beta * residual.squaredNorm();
}

double merit_value(const Matrix& X, const SubproblemAnchors& a,
                   const GramOperator& op, const SolverConfig& c) {
  return prox_quadratic(X, a, op, c) + penalty_term(X, a, op, c);
}

Matrix approx_gradient(const Matrix& X, const SubproblemAnchors& a,
                       const GramOperator& op, const SolverConfig& c) {
  const Matrix grad_l = prox_quadratic_gradient(X, a, op, c);
  const Matrix lam = lambda_matrix(X, grad_l);
  Matrix residual = X.transpose() * X;
  residual.diagonal().array() -= 1.0;
  return grad_l - X * lam + c.beta * (X * residual);
}

PenaltyBound beta_lower_bound(const GramOperator& op, const SolverConfig& c) {
  const double rho = c.rho;
  const double gram_norm = op.spectral_norm_bound();
  // sup ||grad l|| over the ball, with every anchor block inside the ball
  const double grad_sup =
      2.0 * gram_norm * rho + 4.0 * (c.mu1 + c.mu2 + c.tau1) * rho;
  // Lipschitz constant of grad l (affine in X)
  const double lip = 2.0 * gram_norm + 2.0 * (c.mu1 + c.mu2 + c.tau1);
  PenaltyBound b;
  b.lambda0 = std::max(1.0, grad_sup);
  b.lambda1 = std::max(1.0, rho * grad_sup);
  b.lambda2 = std::max(1.0, grad_sup + rho * lip);
  const int m = c.m;
  b.beta_min = std::max(2.0 * (b.lambda0 + b.lambda1), 2.0 * m * b.lambda2);
  return b;
}

PenaltyBound beta_lower_bound(const DataMatrix& A, const SolverConfig& c) {
  GramOperator op(A.values);
  return beta_lower_bound(op, c);
}

}  // namespace dscofs
