#include "dscofs/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "dscofs/feature_selection.hpp"

namespace dscofs {

namespace {

int label_count(const LabelVector& labels) {
  int c = 0;
  for (int v : labels) {
    if (v < 0) throw std::invalid_argument("labels must be >= 0");
    c = std::max(c, v + 1);
  }
  return c;
}

}  // namespace

LabelVector kmeans(const Matrix& data, int k, Rng& rng, int max_iter,
                   double tol) {
  const Eigen::Index dim = data.rows();
  const Eigen::Index n = data.cols();
  if (k <= 0 || k > n) throw std::invalid_argument("kmeans: need 1 <= k <= n");
  if (!data.allFinite()) throw std::invalid_argument("kmeans: non-finite data");

  // k-means++ seeding
  Matrix centers(dim, k);
  std::vector<double> dist2(n, std::numeric_limits<double>::infinity());
  {
    const Eigen::Index first = static_cast<Eigen::Index>(rng.uniform_int(n));
    centers.col(0) = data.col(first);
    for (int c = 1; c < k; ++c) {
      double total = 0.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        const double d2 = (data.col(i) - centers.col(c - 1)).squaredNorm();
        dist2[i] = std::min(dist2[i], d2);
        total += dist2[i];
      }
      Eigen::Index chosen = n - 1;
      if (total > 0.0) {
        const double target = rng.uniform() * total;
        double cum = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
          cum += dist2[i];
          if (cum >= target) {
            chosen = i;
            break;
          }
        }
      } else {
        chosen = static_cast<Eigen::Index>(rng.uniform_int(n));
      }
      centers.col(c) = data.col(chosen);
    }
  }

  LabelVector labels(n, 0);
  std::vector<Eigen::Index> counts(k, 0);
  for (int iter = 0; iter < max_iter; ++iter) {
    // assignment; ties go to the smaller center index
    for (Eigen::Index i = 0; i < n; ++i) {
      double best = std::numeric_limits<double>::infinity();
      int arg = 0;
      for (int c = 0; c < k; ++c) {
        const double d2 = (data.col(i) - centers.col(c)).squaredNorm();
        if (d2 < best) {
          best = d2;
          arg = c;
        }
      }
      labels[i] = arg;
    }
    Matrix next = Matrix::Zero(dim, k);
    std::fill(counts.begin(), counts.end(), 0);
    for (Eigen::Index i = 0; i < n; ++i) {
      next.col(labels[i]) += data.col(i);
      ++counts[labels[i]];
    }
    for (int c = 0; c < k; ++c) {
      if (counts[c] > 0) {
        next.col(c) /= static_cast<double>(counts[c]);
      } else {
        // re-seed an empty cluster at the point farthest from its own center
        double worst = -1.0;
        Eigen::Index arg = 0;
        for (Eigen::Index i = 0; i < n; ++i) {
          const double d2 = (data.col(i) - centers.col(labels[i])).squaredNorm();
          if (d2 > worst) {
            worst = d2;
            arg = i;
          }
        }
        next.col(c) = data.col(arg);
      }
    }
    const double shift = (next - centers).colwise().norm().maxCoeff();
    centers = next;
    if (shift <= tol) break;
  }
  // final assignment against the converged centers
  for (Eigen::Index i = 0; i < n; ++i) {
    double best = std::numeric_limits<double>::infinity();
    int arg = 0;
    for (int c = 0; c < k; ++c) {
      const double d2 = (data.col(i) - centers.col(c)).squaredNorm();
      if (d2 < best) {
        best = d2;
        arg = c;
      }
    }
    labels[i] = arg;
  }
  return labels;
}

std::vector<int> hungarian_match(const LabelVector& pseudo,
                                 const LabelVector& truth) {
  if (pseudo.size() != truth.size()) {
    throw std::invalid_argument("hungarian_match: length mismatch");
  }
  const int kp = label_count(pseudo);
  const int kt = label_count(truth);
  const int K = std::max(kp, kt);
  Matrix counts = Matrix::Zero(K, K);
  for (std::size_t i = 0; i < pseudo.size(); ++i) {
    counts(pseudo[i], truth[i]) += 1.0;
  }
  // min-cost assignment on (max - count), potentials formulation
  const double top = counts.maxCoeff();
  std::vector<std::vector<double>> cost(K + 1, std::vector<double>(K + 1, 0.0));
  for (int i = 1; i <= K; ++i)
    for (int j = 1; j <= K; ++j) cost[i][j] = top - counts(i - 1, j - 1);

  std::vector<double> u(K + 1, 0.0), v(K + 1, 0.0);
  std::vector<int> p(K + 1, 0), way(K + 1, 0);
  for (int i = 1; i <= K; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(K + 1, std::numeric_limits<double>::infinity());
    std::vector<char> used(K + 1, false);
    do {
      used[j0] = true;
      const int i0 = p[j0];
      double delta = std::numeric_limits<double>::infinity();
      int j1 = 0;
      for (int j = 1; j <= K; ++j) {
        if (used[j]) continue;
        const double cur = cost[i0][j] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= K; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }

  std::vector<int> mapping(kp, -1);
  for (int j = 1; j <= K; ++j) {
    const int i = p[j];
    if (i >= 1 && i <= kp && j <= kt) mapping[i - 1] = j - 1;
  }
  return mapping;
}

double acc(const LabelVector& pseudo, const LabelVector& truth) {
  const std::vector<int> mapping = hungarian_match(pseudo, truth);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < pseudo.size(); ++i) {
    if (mapping[pseudo[i]] == truth[i]) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(pseudo.size());
}

double nmi(const LabelVector& p, const LabelVector& q) {
  if (p.size() != q.size()) throw std::invalid_argument("nmi: length mismatch");
  const double n = static_cast<double>(p.size());
  const int kp = label_count(p);
  const int kq = label_count(q);
  Matrix joint = Matrix::Zero(kp, kq);
  for (std::size_t i = 0; i < p.size(); ++i) joint(p[i], q[i]) += 1.0;
  joint /= n;
  const Vector pp = joint.rowwise().sum();
  const Vector pq = joint.colwise().sum();
  double hp = 0.0, hq = 0.0, mi = 0.0;
  for (int i = 0; i < kp; ++i)
    if (pp[i] > 0) hp -= pp[i] * std::log(pp[i]);
  for (int j = 0; j < kq; ++j)
    if (pq[j] > 0) hq -= pq[j] * std::log(pq[j]);
  for (int i = 0; i < kp; ++i)
    for (int j = 0; j < kq; ++j)
      if (joint(i, j) > 0) {
        mi += joint(i, j) * std::log(joint(i, j) / (pp[i] * pq[j]));
      }
  if (hp <= 0.0 || hq <= 0.0) return 0.0;
  return mi / std::sqrt(hp * hq);
}

EvaluationReport evaluate(const DataMatrix& A, const std::vector<int>& selected,
                          const LabelVector& truth, int runs, const Rng& rng) {
  if (truth.size() != static_cast<std::size_t>(A.n())) {
    throw std::invalid_argument("evaluate: truth length must equal sample count");
  }
  if (runs < 1) throw std::invalid_argument("evaluate: runs >= 1");
  const DataMatrix reduced = reduce_data(A, selected);
  const int k = label_count(truth);

  EvaluationReport rep;
  rep.runs = runs;
  rep.selected_count = static_cast<int>(selected.size());
  rep.acc_per_run.reserve(runs);
  rep.nmi_per_run.reserve(runs);
  for (int t = 0; t < runs; ++t) {
    Rng run_rng = rng.child(static_cast<std::uint64_t>(t));
    const LabelVector pseudo = kmeans(reduced.values, k, run_rng);
    rep.acc_per_run.push_back(acc(pseudo, truth));
    rep.nmi_per_run.push_back(nmi(pseudo, truth));
  }
  auto mean_of = [](const std::vector<double>& xs) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s / static_cast<double>(xs.size());
  };
  auto std_of = [&](const std::vector<double>& xs, double mean) {
    double s = 0.0;
    for (double x : xs) s += (x - mean) * (x - mean);
    return std::sqrt(s / static_cast<double>(xs.size()));
  };
  const double am = mean_of(rep.acc_per_run);
  const double nm = mean_of(rep.nmi_per_run);
  rep.acc_mean = 100.0 * am;
  rep.nmi_mean = 100.0 * nm;
  rep.acc_std = 100.0 * std_of(rep.acc_per_run, am);
  rep.nmi_std = 100.0 * std_of(rep.nmi_per_run, nm);
  return rep;
}

}  // namespace dscofs
