#include "biscore/metrics.hpp"

#include <algorithm>
#include <cstdint>
#include <vector>

#include "biscore/error.hpp"

namespace biscore {
namespace {

using Table = std::vector<std::vector<std::int64_t>>;

Table contingency(const Labeling& truth, const Labeling& pred, int groups) {
  Table t(static_cast<std::size_t>(groups), std::vector<std::int64_t>(static_cast<std::size_t>(groups), 0));
  for (std::size_t i = 0; i < truth.size(); ++i) {
    ++t[static_cast<std::size_t>(truth[i] - 1)][static_cast<std::size_t>(pred[i] - 1)];
  }
  return t;
}

void check_pair(const Labeling& truth, const Labeling& pred) {
  if (truth.size() != pred.size()) {
    throw DataError("labelings differ in length (" + std::to_string(truth.size()) + " vs " +
                    std::to_string(pred.size()) + ")");
  }
}

std::int64_t pairs(std::int64_t x) { return x * (x - 1) / 2; }

}  // namespace

double error_rate(const Labeling& truth, const Labeling& pred) {
  check_pair(truth, pred);
  if (truth.size() == 0) throw DataError("error_rate of empty labelings");
  const int k = std::max(truth.groups(), pred.groups());
  if (k > kMaxErrorRateGroups) {
    throw DataError("error_rate supports at most " + std::to_string(kMaxErrorRateGroups) + " groups");
  }
  const Table t = contingency(truth, pred, k);

  // best[mask]: most agreements when the first popcount(mask) true groups
  // are matched to the predicted groups in mask.
  std::vector<std::int64_t> best(std::size_t{1} << k, -1);
  best[0] = 0;
  for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
    if (best[mask] < 0) continue;
    const auto row = static_cast<std::size_t>(__builtin_popcount(mask));
    if (row == static_cast<std::size_t>(k)) continue;
    for (int c = 0; c < k; ++c) {
      if (mask & (1u << c)) continue;
      auto& slot = best[mask | (1u << c)];
      slot = std::max(slot, best[mask] + t[row][static_cast<std::size_t>(c)]);
    }
  }
  const std::int64_t agree = best[(std::size_t{1} << k) - 1];
  return static_cast<double>(static_cast<std::int64_t>(truth.size()) - agree) / static_cast<double>(truth.size());
}

double combined_error_rate(const Labeling& row_truth, const Labeling& row_pred, const Labeling& col_truth,
                           const Labeling& col_pred) {
  return std::max(error_rate(row_truth, row_pred), error_rate(col_truth, col_pred));
}

double ari(const Labeling& truth, const Labeling& pred) {
  check_pair(truth, pred);
  if (truth.size() < 2) throw DataError("ARI needs at least two nodes");
  const int k = std::max(truth.groups(), pred.groups());
  const Table t = contingency(truth, pred, k);

  // All binomial sums are exact integers well inside double range.
  std::int64_t index = 0, row_sum = 0, col_sum = 0;
  for (int a = 0; a < k; ++a) {
    std::int64_t row_total = 0, col_total = 0;
    for (int b = 0; b < k; ++b) {
      index += pairs(t[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]);
      row_total += t[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
      col_total += t[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)];
    }
    row_sum += pairs(row_total);
    col_sum += pairs(col_total);
  }
  const std::int64_t total = pairs(static_cast<std::int64_t>(truth.size()));
  // The denominator vanishes only when both partitions are a single
  // cluster or both are all singletons, i.e. they coincide.
  if (row_sum == col_sum && (row_sum == 0 || row_sum == total)) return 1.0;

  const double expected = static_cast<double>(row_sum) * static_cast<double>(col_sum) / static_cast<double>(total);
  const double maximum = 0.5 * (static_cast<double>(row_sum) + static_cast<double>(col_sum));
  return (static_cast<double>(index) - expected) / (maximum - expected);
}

double combined_ari(const Labeling& row_truth, const Labeling& row_pred, const Labeling& col_truth,
                    const Labeling& col_pred) {
  return std::min(ari(row_truth, row_pred), ari(col_truth, col_pred));
}

}  // namespace biscore
