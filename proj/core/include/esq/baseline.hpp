#pragma once

// k-means++ over capped TF-IDF features, the comparison baseline.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "esq/assignment.hpp"
#include "esq/index.hpp"

namespace esq {

/// Dense row-major N x F matrix.
struct FeatureMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;
  std::vector<std::string> feature_terms;

  static FeatureMatrix from_rows(const std::vector<std::vector<double>>& rows);

  std::span<const double> row(std::size_t i) const { return {values.data() + i * cols, cols}; }
  std::span<double> row(std::size_t i) { return {values.data() + i * cols, cols}; }
};

/// Keeps the max_features highest-DF terms (ties lexicographic), weights
/// #(t,d) * ln(1 + |D|/DF(t)) and L2-normalises rows (zero rows allowed).
FeatureMatrix tfidf_matrix(const InvertedIndex& index, std::size_t max_features = 1000);

struct KMeansResult {
  ClusterAssignment assignment;
  /// Within-cluster sum of squares after each iteration.
  std::vector<double> inertia_history;
  int iterations = 0;
};

/// D^2-seeded k-means++ followed by Lloyd iterations until assignments stop
/// changing or max_iters. An empty cluster takes the point farthest from its
/// current centroid. Throws esq::Error unless 1 <= k <= rows.
KMeansResult kmeans_pp(const FeatureMatrix& matrix, std::size_t k, std::uint64_t seed, int max_iters = 300);

}  // namespace esq
