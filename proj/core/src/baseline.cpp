#include "esq/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "esq/error.hpp"
#include "esq/random.hpp"

namespace esq {
namespace {

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

// Index drawn with probability proportional to weights; uniform if all zero.
std::size_t weighted_pick(Rng& rng, const std::vector<double>& weights) {
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (!(total > 0.0)) return uniform_index(rng, weights.size());
  const double target = uniform_unit(rng) * total;
  double running = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    running += weights[i];
    if (target < running && weights[i] > 0.0) return i;
  }
  for (std::size_t i = weights.size(); i-- > 0;)
    if (weights[i] > 0.0) return i;
  return weights.size() - 1;
}

}  // namespace

FeatureMatrix FeatureMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  FeatureMatrix m;
  m.rows = rows.size();
  m.cols = rows.empty() ? 0 : rows.front().size();
  m.values.reserve(m.rows * m.cols);
  for (const auto& r : rows) {
    if (r.size() != m.cols) throw Error("ragged feature rows");
    m.values.insert(m.values.end(), r.begin(), r.end());
  }
  for (std::size_t j = 0; j < m.cols; ++j) m.feature_terms.push_back("f" + std::to_string(j));
  return m;
}

FeatureMatrix tfidf_matrix(const InvertedIndex& index, std::size_t max_features) {
  if (index.doc_count() == 0) throw Error("empty index");
  std::vector<TermId> terms(index.term_count());
  std::iota(terms.begin(), terms.end(), TermId{0});
  std::stable_sort(terms.begin(), terms.end(),
                   [&](TermId a, TermId b) { return index.doc_freq(a) > index.doc_freq(b); });
  terms.resize(std::min(max_features, terms.size()));

  FeatureMatrix m;
  m.rows = index.doc_count();
  m.cols = terms.size();
  m.values.assign(m.rows * m.cols, 0.0);
  const auto n = static_cast<double>(index.doc_count());
  for (std::size_t j = 0; j < terms.size(); ++j) {
    m.feature_terms.push_back(index.term(terms[j]));
    const double idf = std::log(1.0 + n / static_cast<double>(index.doc_freq(terms[j])));
    for (const auto& p : index.postings(terms[j])) m.values[p.doc * m.cols + j] = static_cast<double>(p.count) * idf;
  }
  for (std::size_t i = 0; i < m.rows; ++i) {
    auto r = m.row(i);
    double norm2 = 0.0;
    for (double x : r) norm2 += x * x;
    if (norm2 > 0.0) {
      const double inv = 1.0 / std::sqrt(norm2);
      for (double& x : r) x *= inv;
    }
  }
  return m;
}

KMeansResult kmeans_pp(const FeatureMatrix& matrix, std::size_t k, std::uint64_t seed, int max_iters) {
  const std::size_t n = matrix.rows;
  const std::size_t dim = matrix.cols;
  if (k < 1) throw Error("k must be >= 1");
  if (k > n) throw Error("k (" + std::to_string(k) + ") exceeds the number of points (" + std::to_string(n) + ")");

  Rng rng = make_rng({seed});
  std::vector<double> centroids(k * dim);
  auto centroid = [&](std::size_t c) { return std::span<double>(centroids.data() + c * dim, dim); };

  // k-means++ seeding.
  std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
  std::size_t pick = uniform_index(rng, n);
  for (std::size_t c = 0; c < k; ++c) {
    if (c > 0) pick = weighted_pick(rng, nearest);
    std::copy_n(matrix.row(pick).begin(), dim, centroid(c).begin());
    for (std::size_t i = 0; i < n; ++i) nearest[i] = std::min(nearest[i], squared_distance(matrix.row(i), centroid(c)));
  }

  KMeansResult result;
  std::vector<std::uint32_t> label(n, 0);
  std::vector<double> dist(n, 0.0);
  std::vector<std::size_t> sizes(k);
  bool first = true;
  for (int iter = 0; iter < max_iters; ++iter) {
    bool changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      std::uint32_t best = 0;
      double best_d = std::numeric_limits<double>::infinity();
      for (std::size_t c = 0; c < k; ++c) {
        const double d = squared_distance(matrix.row(i), centroid(c));
        if (d < best_d) {
          best_d = d;
          best = static_cast<std::uint32_t>(c);
        }
      }
      if (first || best != label[i]) changed = true;
      label[i] = best;
      dist[i] = best_d;
    }
    first = false;

    // Repair empty clusters with the point farthest from its centroid.
    std::fill(sizes.begin(), sizes.end(), 0);
    for (auto l : label) ++sizes[l];
    for (std::size_t c = 0; c < k; ++c) {
      if (sizes[c] != 0) continue;
      std::size_t far = n;
      for (std::size_t i = 0; i < n; ++i)
        if (sizes[label[i]] > 1 && (far == n || dist[i] > dist[far])) far = i;
      if (far == n) break;
      --sizes[label[far]];
      label[far] = static_cast<std::uint32_t>(c);
      dist[far] = 0.0;
      sizes[c] = 1;
      changed = true;
    }

    std::fill(centroids.begin(), centroids.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      auto cen = centroid(label[i]);
      const auto r = matrix.row(i);
      for (std::size_t j = 0; j < dim; ++j) cen[j] += r[j];
    }
    for (std::size_t c = 0; c < k; ++c) {
      const double inv = 1.0 / static_cast<double>(sizes[c]);
      for (double& x : centroid(c)) x *= inv;
    }
    double inertia = 0.0;
    for (std::size_t i = 0; i < n; ++i) inertia += squared_distance(matrix.row(i), centroid(label[i]));
    result.inertia_history.push_back(inertia);
    result.iterations = iter + 1;
    if (!changed) break;
  }

  result.assignment = ClusterAssignment(n, static_cast<std::uint32_t>(k));
  for (std::size_t i = 0; i < n; ++i) result.assignment.cluster_of[i] = label[i];
  return result;
}

}  // namespace esq
