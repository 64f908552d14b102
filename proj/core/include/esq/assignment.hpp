#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace esq {

/// Partial or total map from document ordinal to cluster index.
struct ClusterAssignment {
  std::vector<std::optional<std::uint32_t>> cluster_of;
  std::uint32_t cluster_count = 0;

  ClusterAssignment() = default;
  ClusterAssignment(std::size_t doc_count, std::uint32_t clusters)
      : cluster_of(doc_count), cluster_count(clusters) {}

  std::size_t doc_count() const noexcept { return cluster_of.size(); }
  std::size_t assigned_count() const noexcept;
  bool is_total() const noexcept { return assigned_count() == doc_count(); }
  /// assigned / total; 0 for an empty assignment.
  double coverage() const noexcept;
  /// Clusters holding at least one document.
  std::size_t non_empty_clusters() const;
  /// Throws esq::Error if an index is out of range.
  void validate() const;

  friend bool operator==(const ClusterAssignment&, const ClusterAssignment&) = default;
};

}  // namespace esq
