#pragma once

#include "dscofs/core_model.hpp"
#include "dscofs/rng.hpp"
#include "dscofs/types.hpp"

namespace dscofs {

// Closest orthonormal-column factor (polar), via thin SVD.
Matrix polar_retract(const Matrix& X);

// Best of `restarts` random orthonormal d x m draws under -Tr(X'AA'X).
Matrix init_orthogonal(Eigen::Index d, int m, const GramOperator& op,
                       int restarts, Rng& rng);
Matrix init_orthogonal(Eigen::Index d, int m, const DataMatrix& A,
                       int restarts, Rng& rng);

// Relative objective-change termination rule.
bool check_stop(double f_prev, double f_curr, double tol);

// Fills every auto field of the config from the data: m/rho/budgets/couplings
// and the orthogonality penalty (1.05x its analytic threshold). Throws on an
// infeasible combination.
SolverConfig resolve_config(const DataMatrix& A, SolverConfig config);

// The full alternating solve. Expects centered data.
SolveResult run(const DataMatrix& A, const SolverConfig& config);

ConvergenceDiagnostics convergence_diagnostics(const SolveResult& result,
                                               const SolverConfig& config);

}  // namespace dscofs
