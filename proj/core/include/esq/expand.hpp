#pragma once

#include <cstddef>
#include <ostream>
#include <utility>
#include <vector>

#include "esq/assignment.hpp"
#include "esq/index.hpp"

namespace esq {

/// Sparse L2-normalised TF-IDF vector, sorted by term id.
using SparseVector = std::vector<std::pair<TermId, double>>;

/// weight(t) = #(t,d) * ln(1 + |D| / DF(t)), then L2-normalised.
/// An empty document yields the zero vector.
SparseVector vectorize(const InvertedIndex& index, DocId doc);

/// Squared distances are compared after rounding to this resolution, so two
/// neighbours whose distances differ only by rounding error count as tied
/// (and the lower ordinal wins).
inline constexpr double kDistanceResolution = 1e-9;

/// Gives every unassigned document the majority cluster among its K nearest
/// seed documents (Euclidean distance between vectorize() outputs). Equal
/// votes go to the tied cluster whose member ranks nearest. Seed documents
/// keep their clusters. Throws esq::Error when no document is assigned.
ClusterAssignment knn_expand(const InvertedIndex& index, const ClusterAssignment& seeds, std::size_t k = 10);

/// CSV `docId,label,clusterIndex,assignedBy` with assignedBy in {query, knn}
/// (or `kmeans` when seeds is null).
void write_assignment_csv(std::ostream& out, const InvertedIndex& index, const ClusterAssignment* seeds,
                          const ClusterAssignment& final_assignment);

}  // namespace esq
