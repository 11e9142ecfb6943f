#pragma once

#include "dscofs/rng.hpp"
#include "dscofs/types.hpp"

namespace dscofs {

// Lloyd iterations from k-means++ seeding; samples are columns.
LabelVector kmeans(const Matrix& data, int k, Rng& rng, int max_iter = 300,
                   double tol = 1e-6);

// One-to-one map pseudo id -> truth id maximizing total matched count.
// Entries for unmatched pseudo ids (when label counts differ) are -1.
std::vector<int> hungarian_match(const LabelVector& pseudo,
                                 const LabelVector& truth);

double acc(const LabelVector& pseudo, const LabelVector& truth);

// I(P,Q)/sqrt(H(P)H(Q)) with natural logs; 0 when either entropy vanishes.
double nmi(const LabelVector& p, const LabelVector& q);

// Repeated K-means on the selected rows of A, scored against the truth.
EvaluationReport evaluate(const DataMatrix& A, const std::vector<int>& selected,
                          const LabelVector& truth, int runs, const Rng& rng);

}  // namespace dscofs
