#pragma once

#include "dscofs/core_model.hpp"
#include "dscofs/types.hpp"

namespace dscofs {

enum class BbKind { BB1, BB2 };

// Spectral step from successive iterate/gradient differences, clamped to
// [floor, cap]. Returns `fallback` when the pairing degenerates.
double bb_step(const Matrix& dX, const Matrix& dD, BbKind kind, double floor_,
               double cap, double fallback);

// Radial projection onto {||X||_F <= rho}.
Matrix project_ball(const Matrix& Xhat, double rho);

struct InnerReport {
  int iterations = 0;
  double initial_grad_norm = 0.0;
  double final_grad_norm = 0.0;
  double final_merit = 0.0;
  double orth_residual = 0.0;    // ||X'X - I||_F at exit
  double max_iterate_norm = 0.0; // largest ||X||_F seen, stays <= rho
  bool converged = false;
};

// Approximate gradient descent on the exact-penalty merit over the ball,
// with alternating BB steps and a nonmonotone (window-5) descent safeguard.
// Never returns a point with merit above the entry merit.
Matrix solve_x_subproblem(const GramOperator& op, const Matrix& Xk,
                          const Matrix& Yk, const Matrix& Zk,
                          const SolverConfig& config,
                          InnerReport* report = nullptr);

Matrix solve_x_subproblem(const DataMatrix& A, const Matrix& Xk,
                          const Matrix& Yk, const Matrix& Zk,
                          const SolverConfig& config,
                          InnerReport* report = nullptr);

}  // namespace dscofs
