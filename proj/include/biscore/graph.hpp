#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "biscore/labeling.hpp"

namespace biscore {

// Dense n x m non-negative weight matrix of a bipartite network, rows and
// columns being the two node sets. Optional node names travel with the
// matrix so reports can refer to them. Immutable after construction.
class BipartiteAdjacency {
 public:
  // Throws DataError unless n, m >= 1, all weights are finite and >= 0, and
  // name lists (when non-empty) have the right lengths and no duplicates.
  explicit BipartiteAdjacency(Eigen::MatrixXd weights,
                              std::vector<std::string> row_names = {},
                              std::vector<std::string> col_names = {});

  Index n() const noexcept { return weights_.rows(); }
  Index m() const noexcept { return weights_.cols(); }
  const Eigen::MatrixXd& weights() const noexcept { return weights_; }
  double operator()(Index i, Index j) const { return weights_(i, j); }

  bool has_row_names() const noexcept { return !row_names_.empty(); }
  bool has_col_names() const noexcept { return !col_names_.empty(); }
  const std::vector<std::string>& row_names() const noexcept { return row_names_; }
  const std::vector<std::string>& col_names() const noexcept { return col_names_; }

  // Name of row i / column j, falling back to "r<i+1>" / "c<j+1>".
  std::string row_name(Index i) const;
  std::string col_name(Index j) const;

  // Submatrix on the given rows and columns (in the given order), names kept.
  BipartiteAdjacency submatrix(const std::vector<Index>& rows,
                               const std::vector<Index>& cols) const;

 private:
  Eigen::MatrixXd weights_;
  std::vector<std::string> row_names_;
  std::vector<std::string> col_names_;
};

// Reads `citing<TAB>cited<TAB>count` lines. Blank lines and lines starting
// with '#' are skipped. Rows and columns are indexed by first appearance and
// repeated (citing, cited) pairs have their counts summed.
// Throws ParseError (with the 1-based line number) on a malformed line and
// DataError when no edge lines are present.
BipartiteAdjacency load_edge_list(std::istream& in);
BipartiteAdjacency load_edge_list_file(const std::string& path);

// Writes the same format, row-major, skipping zero entries. Weights must be
// integer-valued.
void save_edge_list(const BipartiteAdjacency& a, std::ostream& out);
void save_edge_list_file(const BipartiteAdjacency& a, const std::string& path);

// Keeps column j iff max_i A_ij >= threshold. Throws DataError when the
// threshold is negative or when no column survives.
BipartiteAdjacency filter_columns(const BipartiteAdjacency& a, double threshold);

struct ComponentSelection {
  BipartiteAdjacency adjacency;
  std::vector<Index> kept_rows;  // ascending
  std::vector<Index> kept_cols;  // ascending
};

// Largest connected component of the graph with an edge wherever A_ij > 0,
// measured in rows + columns. Ties go to the component holding the smallest
// row index, then the smallest column index. A matrix without any edge
// yields the 1 x 1 block (row 0, column 0).
ComponentSelection giant_component(const BipartiteAdjacency& a);

// C_w(j) = sum_i A_ij.
Eigen::VectorXd weighted_in_degree(const BipartiteAdjacency& a);

}  // namespace biscore
