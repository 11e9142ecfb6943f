#include "dscofs/prox_ops.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace dscofs {

long count_nonzeros(const Matrix& M) {
  long c = 0;
  for (Eigen::Index j = 0; j < M.cols(); ++j)
    for (Eigen::Index i = 0; i < M.rows(); ++i)
      if (M(i, j) != 0.0) ++c;
  return c;
}

int count_nonzero_rows(const Matrix& M) {
  int c = 0;
  for (Eigen::Index i = 0; i < M.rows(); ++i)
    if (M.row(i).squaredNorm() != 0.0) ++c;
  return c;
}

namespace {

// Indices of the k best scores, descending, smallest index first on ties.
// Partial selection, O(N) expected.
std::vector<long> top_k(const std::vector<double>& score, long k) {
  std::vector<long> idx(score.size());
  std::iota(idx.begin(), idx.end(), 0L);
  auto better = [&](long a, long b) {
    if (score[a] != score[b]) return score[a] > score[b];
    return a < b;
  };
  if (k < static_cast<long>(idx.size())) {
    std::nth_element(idx.begin(), idx.begin() + k, idx.end(), better);
    idx.resize(k);
  }
  return idx;
}

}  // namespace

Matrix hard_threshold_elements(const Matrix& W, long s) {
  const long total = static_cast<long>(W.size());
  if (s < 0 || s > total) {
    throw std::invalid_argument("hard_threshold_elements: s out of [0, d*m]");
  }
  if (s == total) return W;
  Matrix Y = Matrix::Zero(W.rows(), W.cols());
  if (s == 0) return Y;
  // row-major linear index so tie-breaking is by (row, col)
  std::vector<double> mag(total);
  for (Eigen::Index i = 0; i < W.rows(); ++i)
    for (Eigen::Index j = 0; j < W.cols(); ++j)
      mag[i * W.cols() + j] = std::abs(W(i, j));
  for (long lin : top_k(mag, s)) {
    const Eigen::Index i = lin / W.cols();
    const Eigen::Index j = lin % W.cols();
    Y(i, j) = W(i, j);
  }
  return Y;
}

Matrix hard_threshold_rows(const Matrix& V, int r) {
  if (r < 0 || r > V.rows()) {
    throw std::invalid_argument("hard_threshold_rows: r out of [0, d]");
  }
  if (r == V.rows()) return V;
  Matrix Z = Matrix::Zero(V.rows(), V.cols());
  if (r == 0) return Z;
  std::vector<double> norms(V.rows());
  for (Eigen::Index i = 0; i < V.rows(); ++i) norms[i] = V.row(i).squaredNorm();
  for (long i : top_k(norms, r)) Z.row(i) = V.row(i);
  return Z;
}

Matrix blend_target(const Matrix& X_next, const Matrix& prev, double tau) {
  if (tau <= 0) throw std::invalid_argument("blend_target: tau must be positive");
  return (X_next + tau * prev) / (1.0 + tau);
}

double element_threshold_level(const Matrix& W, long s) {
  if (s <= 0) return 0.0;
  std::vector<double> mag(W.size());
  for (Eigen::Index i = 0; i < W.rows(); ++i)
    for (Eigen::Index j = 0; j < W.cols(); ++j)
      mag[i * W.cols() + j] = std::abs(W(i, j));
  s = std::min<long>(s, static_cast<long>(mag.size()));
  std::nth_element(mag.begin(), mag.begin() + (s - 1), mag.end(),
                   std::greater<double>());
  return mag[s - 1];
}

double row_threshold_level(const Matrix& V, int r) {
  if (r <= 0) return 0.0;
  std::vector<double> norms(V.rows());
  for (Eigen::Index i = 0; i < V.rows(); ++i) norms[i] = V.row(i).norm();
  r = std::min<int>(r, static_cast<int>(norms.size()));
  std::nth_element(norms.begin(), norms.begin() + (r - 1), norms.end(),
                   std::greater<double>());
  return norms[r - 1];
}

Matrix y_update(const Matrix& X_next, const Matrix& Y_prev, double tau2, long s) {
  if (X_next.rows() != Y_prev.rows() || X_next.cols() != Y_prev.cols()) {
    throw std::invalid_argument("y_update: shape mismatch");
  }
  return hard_threshold_elements(blend_target(X_next, Y_prev, tau2), s);
}

Matrix z_update(const Matrix& X_next, const Matrix& Z_prev, double tau3, int r) {
  if (X_next.rows() != Z_prev.rows() || X_next.cols() != Z_prev.cols()) {
    throw std::invalid_argument("z_update: shape mismatch");
  }
  return hard_threshold_rows(blend_target(X_next, Z_prev, tau3), r);
}

}  // namespace dscofs
