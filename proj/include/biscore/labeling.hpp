#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace biscore {

using Index = Eigen::Index;

// Community assignment for the nodes of one side. Values are 1-based group
// ids in 1..groups(); a group may be empty (e.g. after restricting to a
// subset of nodes).
class Labeling {
 public:
  Labeling() = default;
  Labeling(std::vector<int> values, int groups);

  const std::vector<int>& values() const noexcept { return values_; }
  int groups() const noexcept { return groups_; }
  std::size_t size() const noexcept { return values_.size(); }
  int operator[](std::size_t i) const { return values_[i]; }

  // Number of nodes in each group, indexed 0..groups()-1.
  std::vector<Index> group_sizes() const;
  bool covers_all_groups() const;

  // Labels of the nodes at `keep` (in that order), same group count.
  Labeling restrict_to(std::span<const Index> keep) const;

  friend bool operator==(const Labeling&, const Labeling&) = default;

 private:
  std::vector<int> values_;
  int groups_ = 0;
};

}  // namespace biscore
