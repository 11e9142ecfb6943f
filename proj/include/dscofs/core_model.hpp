#pragma once

#include "dscofs/types.hpp"

namespace dscofs {

// Removes each feature's mean across samples. Rejects non-finite input.
DataMatrix center_columns(const Matrix& raw);

// Applies X -> A(A'X) without materializing AA' unless d is small enough
// that the dense product is cheaper (d up to ~4434 in the target datasets,
// often with far fewer samples).
class GramOperator {
 public:
  explicit GramOperator(const Matrix& A);

  Eigen::Index dim() const { return d_; }
  // AA'X
  Matrix apply(const Matrix& X) const;
  // certified upper bound on ||AA'||_2 (exact eigenvalue of the smaller
  // Gram when feasible, Gershgorin/Frobenius fallback otherwise)
  double spectral_norm_bound() const { return spec_bound_; }
  double trace() const { return trace_; }

 private:
  const Matrix* A_;
  Matrix gram_;  // AA' when materialized
  bool materialized_ = false;
  Eigen::Index d_ = 0;
  double spec_bound_ = 0.0;
  double trace_ = 0.0;
};

// f(X,Y,Z) = -Tr(X'AA'X) + mu1||X-Y||^2 + mu2||X-Z||^2
double objective_value(const Matrix& X, const Matrix& Y, const Matrix& Z,
                       const GramOperator& op, double mu1, double mu2);
double objective_value(const Matrix& X, const Matrix& Y, const Matrix& Z,
                       const DataMatrix& A, double mu1, double mu2);

struct ObjectiveGradient {
  Matrix dX, dY, dZ;
};

ObjectiveGradient objective_gradient(const Matrix& X, const Matrix& Y,
                                     const Matrix& Z, const GramOperator& op,
                                     double mu1, double mu2);
ObjectiveGradient objective_gradient(const Matrix& X, const Matrix& Y,
                                     const Matrix& Z, const DataMatrix& A,
                                     double mu1, double mu2);

// Lambda(X) = (X'G + G'X)/2 for G = grad of the proximal quadratic at X.
// Symmetrized explicitly to kill round-off asymmetry.
Matrix lambda_matrix(const Matrix& X, const Matrix& grad_l);

// Anchors of the X-subproblem: the blocks the proximal quadratic pulls toward.
struct SubproblemAnchors {
  const Matrix& Xk;
  const Matrix& Yk;
  const Matrix& Zk;
};

// l(X): the proximal-regularized quadratic of the X-subproblem.
double prox_quadratic(const Matrix& X, const SubproblemAnchors& a,
                      const GramOperator& op, const SolverConfig& c);

Matrix prox_quadratic_gradient(const Matrix& X, const SubproblemAnchors& a,
                               const GramOperator& op, const SolverConfig& c);

// g(X) = -<Lambda(X), X'X - I>/2 + (beta/4)||X'X - I||^2
double penalty_term(const Matrix& X, const SubproblemAnchors& a,
                    const GramOperator& op, const SolverConfig& c);

// h(X) = l(X) + g(X)
double merit_value(const Matrix& X, const SubproblemAnchors& a,
                   const GramOperator& op, const SolverConfig& c);

// D(X): the surrogate gradient of h that avoids second derivatives of l.
Matrix approx_gradient(const Matrix& X, const SubproblemAnchors& a,
                       const GramOperator& op, const SolverConfig& c);

// Analytic upper bounds on the suprema behind the penalty threshold, valid
// on the ball ||X||_F <= rho with all anchor blocks inside the ball.
PenaltyBound beta_lower_bound(const GramOperator& op, const SolverConfig& c);
PenaltyBound beta_lower_bound(const DataMatrix& A, const SolverConfig& c);

}  // namespace dscofs
