#pragma once

#include "dscofs/types.hpp"

namespace dscofs {

// Features sorted by row norm of Z, descending, smaller index first on ties.
FeatureRanking rank_features(const Matrix& Z_final);

// |a n b| / n for two equal-size index sets.
double fsr(const std::vector<int>& set_a, const std::vector<int>& set_b,
           std::size_t n);

// Row-submatrix of A with only the selected features, sample order kept.
DataMatrix reduce_data(const DataMatrix& A, const std::vector<int>& selected);

}  // namespace dscofs
