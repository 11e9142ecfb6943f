#include "dscofs/synth_data.hpp"

#include <cmath>
#include <stdexcept>

namespace dscofs {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Rotate the cloud so both coordinates carry equal central variance, moving
// the covariance anisotropy into the off-diagonal term.
double balance_rotation(Matrix& pts) {
  const Eigen::RowVector2d mean = pts.colwise().mean();
  const Matrix centered = pts.rowwise() - mean;
  const double vx = centered.col(0).squaredNorm();
  const double vy = centered.col(1).squaredNorm();
  const double c = (centered.col(0).cwiseProduct(centered.col(1))).sum();
  const double phi = 0.5 * std::atan2(vx - vy, 2.0 * c);
  Eigen::Matrix2d rot;
  rot << std::cos(phi), -std::sin(phi), std::sin(phi), std::cos(phi);
  pts = (rot * pts.transpose()).transpose();
  return phi;
}

void add_jitter(Matrix& pts, double noise_sd, Rng& rng) {
  if (noise_sd == 0.0) return;
  for (Eigen::Index i = 0; i < pts.rows(); ++i) {
    pts(i, 0) += noise_sd * rng.normal();
    pts(i, 1) += noise_sd * rng.normal();
  }
}

}  // namespace

Geometry gen_2spiral(int n, double noise_sd, Rng& rng, double* rotation_out) {
  if (n < 2 || n % 2 != 0) {
    throw std::invalid_argument("gen_2spiral: n must be even and >= 2");
  }
  const int per = n / 2;
  const double t_max = 3.0 * kPi;
  // density along the spiral proportional to 1 - 0.9*sin(2t): concentrates
  // samples where the two coordinates co-vary
  constexpr double kBias = 0.9;
  auto draw_t = [&]() {
    for (;;) {
      const double t = rng.uniform(0.0, t_max);
      const double u = rng.uniform(0.0, 1.0 + kBias);
      if (u <= 1.0 - kBias * std::sin(2.0 * t)) return t;
    }
  };
  Matrix pts(n, 2);
  LabelVector labels(n);
  for (int cls = 0; cls < 2; ++cls) {
    for (int i = 0; i < per; ++i) {
      const double t = draw_t();
      const double sign = (cls == 0) ? 1.0 : -1.0;
      const int row = cls * per + i;
      pts(row, 0) = sign * t * std::cos(t);
      pts(row, 1) = sign * t * std::sin(t);
      labels[row] = cls;
    }
  }
  add_jitter(pts, noise_sd, rng);
  const double phi = balance_rotation(pts);
  if (rotation_out) *rotation_out = phi;
  return {std::move(pts), std::move(labels)};
}

Geometry gen_banana(int n, double noise_sd, Rng& rng, double* rotation_out) {
  if (n < 2 || n % 2 != 0) {
    throw std::invalid_argument("gen_banana: n must be even and >= 2");
  }
  const int per = n / 2;
  // Crescent centers at +/-(0.5, 0.25) so the two classes are
  // point-symmetric about the origin.
  const double cx = 0.5, cy = 0.25;
  Matrix pts(n, 2);
  LabelVector labels(n);
  for (int cls = 0; cls < 2; ++cls) {
    for (int i = 0; i < per; ++i) {
      const double t = rng.uniform(0.0, kPi);
      const int row = cls * per + i;
      if (cls == 0) {
        pts(row, 0) = std::cos(t) - cx;
        pts(row, 1) = std::sin(t) - cy;
      } else {
        pts(row, 0) = (1.0 - std::cos(t)) - cx;
        pts(row, 1) = (0.5 - std::sin(t)) - cy;
      }
      labels[row] = cls;
    }
  }
  add_jitter(pts, noise_sd, rng);
  const double phi = balance_rotation(pts);
  if (rotation_out) *rotation_out = phi;
  return {std::move(pts), std::move(labels)};
}

Geometry gen_dartboard(int n, double noise_sd, Rng& rng, double* rotation_out) {
  if (n < 4 || n % 4 != 0) {
    throw std::invalid_argument("gen_dartboard: n must be a multiple of 4");
  }
  const int per = n / 4;
  Matrix pts(n, 2);
  LabelVector labels(n);
  for (int cls = 0; cls < 4; ++cls) {
    const double radius = static_cast<double>(cls + 1);
    for (int i = 0; i < per; ++i) {
      const double theta = rng.uniform(0.0, 2.0 * kPi);
      const int row = cls * per + i;
      pts(row, 0) = kDartboardAxisX * radius * std::cos(theta);
      pts(row, 1) = kDartboardAxisY * radius * std::sin(theta);
      labels[row] = cls;
    }
  }
  add_jitter(pts, noise_sd, rng);
  const double phi = balance_rotation(pts);
  if (rotation_out) *rotation_out = phi;
  return {std::move(pts), std::move(labels)};
}

PlantedDataset embed_with_noise(const Matrix& points, const LabelVector& labels,
                                Rng& rng) {
  if (points.cols() != 2) {
    throw std::invalid_argument("embed_with_noise: expected 2 geometry columns");
  }
  const Eigen::Index n = points.rows();
  if (static_cast<Eigen::Index>(labels.size()) != n) {
    throw std::invalid_argument("embed_with_noise: label count mismatch");
  }
  const double pooled_mean = points.mean();
  const double pooled_var =
      (points.array() - pooled_mean).square().sum() / static_cast<double>(2 * n);
  const double pooled_sd = std::sqrt(pooled_var);

  PlantedDataset out;
  out.data.values.resize(9, n);
  for (int row = 0; row < 9; ++row) {
    if (row == 3 || row == 4) continue;
    Vector noise(n);
    for (Eigen::Index j = 0; j < n; ++j) noise[j] = rng.normal();
    // rescale so the sample mean and variance match the pooled values exactly
    const double m = noise.mean();
    const double sd = std::sqrt((noise.array() - m).square().sum() /
                                static_cast<double>(n));
    out.data.values.row(row) =
        (((noise.array() - m) / sd) * pooled_sd + pooled_mean).transpose();
  }
  out.data.values.row(3) = points.col(0).transpose();
  out.data.values.row(4) = points.col(1).transpose();
  out.labels = labels;
  out.informative = {3, 4};
  return out;
}

}  // namespace dscofs
