#include "dscofs/feature_selection.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

namespace dscofs {

FeatureRanking rank_features(const Matrix& Z_final) {
  const int d = static_cast<int>(Z_final.rows());
  std::vector<double> score(d);
  for (int i = 0; i < d; ++i) {
    const double s = Z_final.row(i).norm();
    if (!std::isfinite(s)) {
      throw std::invalid_argument("rank_features: non-finite row norm");
    }
    score[i] = s;
  }
  FeatureRanking rank;
  rank.order.resize(d);
  std::iota(rank.order.begin(), rank.order.end(), 0);
  std::stable_sort(rank.order.begin(), rank.order.end(),
                   [&](int a, int b) { return score[a] > score[b]; });
  rank.scores.resize(d);
  for (int i = 0; i < d; ++i) rank.scores[i] = score[rank.order[i]];
  return rank;
}

double fsr(const std::vector<int>& set_a, const std::vector<int>& set_b,
           std::size_t n) {
  if (set_a.size() != n || set_b.size() != n) {
    throw std::invalid_argument("fsr: both sets must have exactly n elements");
  }
  if (n == 0) throw std::invalid_argument("fsr: n must be positive");
  const std::set<int> a(set_a.begin(), set_a.end());
  const std::set<int> b(set_b.begin(), set_b.end());
  if (a.size() != n || b.size() != n) {
    throw std::invalid_argument("fsr: duplicate indices in a set");
  }
  std::size_t inter = 0;
  for (int v : a) inter += b.count(v);
  return static_cast<double>(inter) / static_cast<double>(n);
}

DataMatrix reduce_data(const DataMatrix& A, const std::vector<int>& selected) {
  DataMatrix out;
  out.values.resize(static_cast<Eigen::Index>(selected.size()), A.n());
  for (std::size_t k = 0; k < selected.size(); ++k) {
    const int idx = selected[k];
    if (idx < 0 || idx >= A.d()) {
      throw std::out_of_range("reduce_data: feature index " +
                              std::to_string(idx) + " out of range");
    }
    out.values.row(static_cast<Eigen::Index>(k)) = A.values.row(idx);
  }
  return out;
}

}  // namespace dscofs
