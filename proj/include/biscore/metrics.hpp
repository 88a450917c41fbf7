#pragma once

#include "biscore/labeling.hpp"

namespace biscore {

// Largest group count error_rate accepts.
inline constexpr int kMaxErrorRateGroups = 12;

// Fraction of nodes misclassified under the best matching of predicted to
// true groups (optimal assignment on the confusion matrix). Labelings with
// different group counts are compared on max(k_truth, k_pred) groups.
// Throws DataError on a length mismatch, empty input, or more than
// kMaxErrorRateGroups groups.
double error_rate(const Labeling& truth, const Labeling& pred);

// max of the row-side and column-side error rates.
double combined_error_rate(const Labeling& row_truth, const Labeling& row_pred, const Labeling& col_truth,
                           const Labeling& col_pred);

// Adjusted Rand index from the contingency table. Identical partitions
// (including the all-in-one-cluster case, where the formula is 0/0) score
// 1. Throws DataError on a length mismatch or fewer than 2 nodes.
double ari(const Labeling& truth, const Labeling& pred);

// min of the row-side and column-side ARI.
double combined_ari(const Labeling& row_truth, const Labeling& row_pred, const Labeling& col_truth,
                    const Labeling& col_pred);

}  // namespace biscore
