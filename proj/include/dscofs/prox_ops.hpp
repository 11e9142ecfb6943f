#pragma once

#include "dscofs/types.hpp"

namespace dscofs {

long count_nonzeros(const Matrix& M);
int count_nonzero_rows(const Matrix& M);

// Keeps the s entries of largest magnitude (ties broken by smallest row-major
// linear index), zeroes the rest. Euclidean projection onto {||Y||_0 <= s}.
Matrix hard_threshold_elements(const Matrix& W, long s);

// Keeps the r rows of largest Euclidean norm (ties by smallest row index).
// Euclidean projection onto {||Z||_{2,0} <= r}.
Matrix hard_threshold_rows(const Matrix& V, int r);

// Convex blend pulled between the fresh X and the previous block value.
Matrix blend_target(const Matrix& X_next, const Matrix& prev, double tau);

// Magnitude of the s-th largest |entry| of W (0 when s == 0).
double element_threshold_level(const Matrix& W, long s);
// Norm of the r-th largest row of V (0 when r == 0).
double row_threshold_level(const Matrix& V, int r);

// Closed-form minimizer of ||X_next - Y||^2 + tau2||Y - Y_prev||^2 over
// the element budget.
Matrix y_update(const Matrix& X_next, const Matrix& Y_prev, double tau2, long s);

// Row-wise counterpart over the row budget.
Matrix z_update(const Matrix& X_next, const Matrix& Z_prev, double tau3, int r);

}  // namespace dscofs
