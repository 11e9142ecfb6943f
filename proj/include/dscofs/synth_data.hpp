#pragma once

#include <utility>

#include "dscofs/rng.hpp"
#include "dscofs/types.hpp"

namespace dscofs {

// 2-D geometry plus per-sample class ids; points are rows of an n x 2 matrix.
using Geometry = std::pair<Matrix, LabelVector>;

// Two interleaved Archimedean spirals, t in [0, 3*pi], radius = t, second
// class rotated by pi. Sampling density along t is biased toward the arcs
// that maximize the coordinate covariance, and the cloud is rotated so both
// coordinates carry equal empirical variance. The applied rotation is
// reported through `rotation_out` when supplied.
Geometry gen_2spiral(int n, double noise_sd, Rng& rng,
                     double* rotation_out = nullptr);

// Two crescents (unit half-circles facing each other), point-symmetric about
// the origin, same balancing rotation.
Geometry gen_banana(int n, double noise_sd, Rng& rng,
                    double* rotation_out = nullptr);

// Four concentric elliptical rings with radii 1..4, same balancing rotation.
Geometry gen_dartboard(int n, double noise_sd, Rng& rng,
                       double* rotation_out = nullptr);

// Dartboard ellipse axes (shared with the test oracle).
inline constexpr double kDartboardAxisX = 1.4;
inline constexpr double kDartboardAxisY = 0.7;

// 9-feature dataset: geometry at rows 3 and 4 (0-based), the other seven
// rows are independent Gaussian draws rescaled so each row's sample mean and
// variance equal the pooled mean/variance of the two geometry rows exactly.
PlantedDataset embed_with_noise(const Matrix& points, const LabelVector& labels,
                                Rng& rng);

}  // namespace dscofs
