#include "biscore/labeling.hpp"

#include <algorithm>
#include <string>

#include "biscore/error.hpp"

namespace biscore {

Labeling::Labeling(std::vector<int> values, int groups)
    : values_(std::move(values)), groups_(groups) {
  if (groups_ < 1) throw DataError("labeling needs at least one group");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] < 1 || values_[i] > groups_) {
      throw DataError("label " + std::to_string(values_[i]) + " at position " +
                      std::to_string(i) + " outside 1.." + std::to_string(groups_));
    }
  }
}

std::vector<Index> Labeling::group_sizes() const {
  std::vector<Index> sizes(static_cast<std::size_t>(groups_), 0);
  for (int v : values_) ++sizes[static_cast<std::size_t>(v - 1)];
  return sizes;
}

bool Labeling::covers_all_groups() const {
  const auto sizes = group_sizes();
  return std::none_of(sizes.begin(), sizes.end(), [](Index s) { return s == 0; });
}

Labeling Labeling::restrict_to(std::span<const Index> keep) const {
  std::vector<int> out;
  out.reserve(keep.size());
  for (Index i : keep) {
    if (i < 0 || static_cast<std::size_t>(i) >= values_.size()) {
      throw DataError("restrict_to: index out of range");
    }
    out.push_back(values_[static_cast<std::size_t>(i)]);
  }
  return Labeling(std::move(out), groups_);
}

}  // namespace biscore
