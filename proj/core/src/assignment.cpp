#include "esq/assignment.hpp"

#include <algorithm>
#include <string>

#include "esq/error.hpp"

namespace esq {

std::size_t ClusterAssignment::assigned_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(cluster_of.begin(), cluster_of.end(), [](const auto& c) { return c.has_value(); }));
}

double ClusterAssignment::coverage() const noexcept {
  if (cluster_of.empty()) return 0.0;
  return static_cast<double>(assigned_count()) / static_cast<double>(cluster_of.size());
}

std::size_t ClusterAssignment::non_empty_clusters() const {
  std::vector<bool> seen(cluster_count, false);
  for (const auto& c : cluster_of)
    if (c) seen.at(*c) = true;
  return static_cast<std::size_t>(std::count(seen.begin(), seen.end(), true));
}

void ClusterAssignment::validate() const {
  for (std::size_t d = 0; d < cluster_of.size(); ++d)
    if (cluster_of[d] && *cluster_of[d] >= cluster_count)
      throw Error("document " + std::to_string(d) + " assigned to cluster " + std::to_string(*cluster_of[d]) +
                  " but only " + std::to_string(cluster_count) + " clusters exist");
}

}  // namespace esq
