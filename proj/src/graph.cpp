#include "biscore/graph.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <queue>
#include <string_view>
#include <unordered_map>
#include <unordered_set>

#include "biscore/error.hpp"

namespace biscore {
namespace {

void check_names(const std::vector<std::string>& names, Index expected, const char* side) {
  if (names.empty()) return;
  if (static_cast<Index>(names.size()) != expected) {
    throw DataError(std::string(side) + " name count " + std::to_string(names.size()) +
                    " does not match dimension " + std::to_string(expected));
  }
  std::unordered_set<std::string> seen;
  for (const auto& s : names) {
    if (!seen.insert(s).second) throw DataError(std::string("duplicate ") + side + " name '" + s + "'");
  }
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

// Interns a name, returning its first-appearance index.
Index intern(std::unordered_map<std::string, Index>& index, std::vector<std::string>& names,
             std::string_view name) {
  auto [it, inserted] = index.try_emplace(std::string(name), static_cast<Index>(names.size()));
  if (inserted) names.emplace_back(name);
  return it->second;
}

}  // namespace

BipartiteAdjacency::BipartiteAdjacency(Eigen::MatrixXd weights, std::vector<std::string> row_names,
                                       std::vector<std::string> col_names)
    : weights_(std::move(weights)), row_names_(std::move(row_names)), col_names_(std::move(col_names)) {
  if (weights_.rows() < 1 || weights_.cols() < 1) {
    throw DataError("bipartite adjacency must have at least one row and one column");
  }
  for (Index j = 0; j < weights_.cols(); ++j) {
    for (Index i = 0; i < weights_.rows(); ++i) {
      const double w = weights_(i, j);
      if (!std::isfinite(w) || w < 0.0) {
        throw DataError("weight (" + std::to_string(i) + ", " + std::to_string(j) +
                        ") is negative or not finite");
      }
    }
  }
  check_names(row_names_, weights_.rows(), "row");
  check_names(col_names_, weights_.cols(), "column");
}

std::string BipartiteAdjacency::row_name(Index i) const {
  return has_row_names() ? row_names_[static_cast<std::size_t>(i)] : "r" + std::to_string(i + 1);
}

std::string BipartiteAdjacency::col_name(Index j) const {
  return has_col_names() ? col_names_[static_cast<std::size_t>(j)] : "c" + std::to_string(j + 1);
}

BipartiteAdjacency BipartiteAdjacency::submatrix(const std::vector<Index>& rows,
                                                 const std::vector<Index>& cols) const {
  Eigen::MatrixXd w(static_cast<Index>(rows.size()), static_cast<Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) {
    for (std::size_t r = 0; r < rows.size(); ++r) {
      w(static_cast<Index>(r), static_cast<Index>(c)) = weights_(rows[r], cols[c]);
    }
  }
  std::vector<std::string> rn, cn;
  if (has_row_names()) {
    for (Index i : rows) rn.push_back(row_names_[static_cast<std::size_t>(i)]);
  }
  if (has_col_names()) {
    for (Index j : cols) cn.push_back(col_names_[static_cast<std::size_t>(j)]);
  }
  return BipartiteAdjacency(std::move(w), std::move(rn), std::move(cn));
}

BipartiteAdjacency load_edge_list(std::istream& in) {
  std::unordered_map<std::string, Index> row_index, col_index;
  std::vector<std::string> row_names, col_names;
  std::map<std::pair<Index, Index>, double> counts;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    if (!view.empty() && view.back() == '\r') view.remove_suffix(1);
    if (trim(view).empty() || view.front() == '#') continue;

    std::string_view fields[3];
    std::size_t count = 0;
    std::size_t start = 0;
    while (true) {
      const auto tab = view.find('\t', start);
      const auto field = view.substr(start, tab == std::string_view::npos ? tab : tab - start);
      if (count < 3) fields[count] = field;
      ++count;
      if (tab == std::string_view::npos) break;
      start = tab + 1;
    }
    if (count != 3) {
      throw ParseError(line_no, "expected 3 tab-separated fields, got " + std::to_string(count));
    }
    if (fields[0].empty() || fields[1].empty()) throw ParseError(line_no, "empty node name");

    const auto text = trim(fields[2]);
    if (!text.empty() && text.front() == '-') throw ParseError(line_no, "negative count");
    unsigned long long value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
      throw ParseError(line_no, "count '" + std::string(fields[2]) + "' is not a non-negative integer");
    }

    const Index i = intern(row_index, row_names, fields[0]);
    const Index j = intern(col_index, col_names, fields[1]);
    counts[{i, j}] += static_cast<double>(value);
  }
  if (row_names.empty()) throw DataError("edge list contains no edges");

  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(static_cast<Index>(row_names.size()),
                                            static_cast<Index>(col_names.size()));
  for (const auto& [key, value] : counts) w(key.first, key.second) = value;
  return BipartiteAdjacency(std::move(w), std::move(row_names), std::move(col_names));
}

BipartiteAdjacency load_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  return load_edge_list(in);
}

void save_edge_list(const BipartiteAdjacency& a, std::ostream& out) {
  for (Index i = 0; i < a.n(); ++i) {
    for (Index j = 0; j < a.m(); ++j) {
      const double w = a(i, j);
      if (w == 0.0) continue;
      if (w != std::floor(w) || w > 9.0e15) {
        throw DataError("edge-list output requires integer weights");
      }
      out << a.row_name(i) << '\t' << a.col_name(j) << '\t'
          << static_cast<unsigned long long>(w) << '\n';
    }
  }
  if (!out) throw Error("failed writing edge list");
}

void save_edge_list_file(const BipartiteAdjacency& a, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  save_edge_list(a, out);
}

BipartiteAdjacency filter_columns(const BipartiteAdjacency& a, double threshold) {
  if (!(threshold >= 0.0)) throw DataError("filter threshold must be non-negative");
  std::vector<Index> rows(static_cast<std::size_t>(a.n()));
  for (Index i = 0; i < a.n(); ++i) rows[static_cast<std::size_t>(i)] = i;
  std::vector<Index> cols;
  for (Index j = 0; j < a.m(); ++j) {
    if (a.weights().col(j).maxCoeff() >= threshold) cols.push_back(j);
  }
  if (cols.empty()) {
    throw DataError("empty network: no column has an entry >= " + std::to_string(threshold));
  }
  return a.submatrix(rows, cols);
}

ComponentSelection giant_component(const BipartiteAdjacency& a) {
  const Index n = a.n();
  const Index m = a.m();
  // Nodes 0..n-1 are rows, n..n+m-1 are columns.
  std::vector<int> component(static_cast<std::size_t>(n + m), -1);
  std::vector<Index> sizes;
  const auto& w = a.weights();

  // Seeding BFS from rows in ascending order, then leftover columns, makes
  // component ids follow the tie-break order.
  for (Index start = 0; start < n + m; ++start) {
    if (component[static_cast<std::size_t>(start)] >= 0) continue;
    const int id = static_cast<int>(sizes.size());
    Index size = 0;
    std::queue<Index> frontier;
    frontier.push(start);
    component[static_cast<std::size_t>(start)] = id;
    while (!frontier.empty()) {
      const Index v = frontier.front();
      frontier.pop();
      ++size;
      if (v < n) {
        for (Index j = 0; j < m; ++j) {
          auto& c = component[static_cast<std::size_t>(n + j)];
          if (c < 0 && w(v, j) > 0.0) {
            c = id;
            frontier.push(n + j);
          }
        }
      } else {
        const Index j = v - n;
        for (Index i = 0; i < n; ++i) {
          auto& c = component[static_cast<std::size_t>(i)];
          if (c < 0 && w(i, j) > 0.0) {
            c = id;
            frontier.push(i);
          }
        }
      }
    }
    sizes.push_back(size);
  }

  int best = 0;
  for (std::size_t c = 1; c < sizes.size(); ++c) {
    if (sizes[c] > sizes[static_cast<std::size_t>(best)]) best = static_cast<int>(c);
  }

  ComponentSelection out{a, {}, {}};
  if (sizes[static_cast<std::size_t>(best)] == 1) {
    // No edges anywhere: every component is a single node.
    out.kept_rows = {0};
    out.kept_cols = {0};
  } else {
    for (Index i = 0; i < n; ++i) {
      if (component[static_cast<std::size_t>(i)] == best) out.kept_rows.push_back(i);
    }
    for (Index j = 0; j < m; ++j) {
      if (component[static_cast<std::size_t>(n + j)] == best) out.kept_cols.push_back(j);
    }
  }
  if (static_cast<Index>(out.kept_rows.size()) != n || static_cast<Index>(out.kept_cols.size()) != m) {
    out.adjacency = a.submatrix(out.kept_rows, out.kept_cols);
  }
  return out;
}

Eigen::VectorXd weighted_in_degree(const BipartiteAdjacency& a) {
  return a.weights().colwise().sum().transpose();
}

}  // namespace biscore
