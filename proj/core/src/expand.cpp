#include "esq/expand.hpp"

#include <algorithm>
#include <cmath>

#include "esq/csv.hpp"
#include "esq/error.hpp"
#include "esq/wordlist.hpp"

namespace esq {
namespace {

std::vector<double> idf_table(const InvertedIndex& index) {
  std::vector<double> idf(index.term_count());
  for (TermId t = 0; t < index.term_count(); ++t) idf[t] = inverse_doc_freq(index, t);
  return idf;
}

SparseVector weigh(const InvertedIndex& index, DocId doc, const std::vector<double>& idf) {
  SparseVector v;
  const auto terms = index.doc_terms(doc);
  v.reserve(terms.size());
  double norm2 = 0.0;
  for (const auto& tc : terms) {
    const double w = static_cast<double>(tc.count) * idf[tc.term];
    v.emplace_back(tc.term, w);
    norm2 += w * w;
  }
  if (norm2 > 0.0) {
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& [t, w] : v) w *= inv;
  }
  return v;
}

double squared_norm(const SparseVector& v) {
  double s = 0.0;
  for (const auto& [t, w] : v) s += w * w;
  return s;
}

}  // namespace

SparseVector vectorize(const InvertedIndex& index, DocId doc) {
  if (doc >= index.doc_count()) throw Error("document ordinal " + std::to_string(doc) + " out of range");
  std::vector<double> idf(index.term_count(), 0.0);
  for (const auto& tc : index.doc_terms(doc)) idf[tc.term] = inverse_doc_freq(index, tc.term);
  return weigh(index, doc, idf);
}

ClusterAssignment knn_expand(const InvertedIndex& index, const ClusterAssignment& seeds, std::size_t k) {
  seeds.validate();
  if (seeds.doc_count() != index.doc_count()) throw Error("seed assignment does not match the index size");
  if (k == 0) throw Error("K must be >= 1");
  std::vector<DocId> labelled;
  for (DocId d = 0; d < seeds.doc_count(); ++d)
    if (seeds.cluster_of[d]) labelled.push_back(d);
  if (labelled.empty()) throw Error("KNN expansion needs at least one seed document");

  ClusterAssignment out = seeds;
  if (labelled.size() == seeds.doc_count()) return out;

  const auto idf = idf_table(index);
  std::vector<SparseVector> vectors(index.doc_count());
  std::vector<double> norms(index.doc_count());
  for (DocId d = 0; d < index.doc_count(); ++d) {
    vectors[d] = weigh(index, d, idf);
    norms[d] = squared_norm(vectors[d]);
  }

  // Seed vectors keyed by term for the dot-product pass.
  std::vector<std::vector<std::pair<std::size_t, double>>> seed_postings(index.term_count());
  for (std::size_t i = 0; i < labelled.size(); ++i)
    for (const auto& [t, w] : vectors[labelled[i]]) seed_postings[t].emplace_back(i, w);

  struct Neighbour {
    long long key;  // squared distance in units of kDistanceResolution
    DocId doc;
    bool operator<(const Neighbour& o) const { return key != o.key ? key < o.key : doc < o.doc; }
  };
  std::vector<double> dots(labelled.size());
  std::vector<Neighbour> neighbours(labelled.size());
  std::vector<std::size_t> votes(seeds.cluster_count);
  std::vector<std::size_t> nearest_rank(seeds.cluster_count);
  const std::size_t take = std::min(k, labelled.size());

  for (DocId u = 0; u < index.doc_count(); ++u) {
    if (seeds.cluster_of[u]) continue;
    std::fill(dots.begin(), dots.end(), 0.0);
    for (const auto& [t, wu] : vectors[u])
      for (const auto& [i, ws] : seed_postings[t]) dots[i] += wu * ws;
    for (std::size_t i = 0; i < labelled.size(); ++i) {
      const double d2 = std::max(0.0, norms[u] + norms[labelled[i]] - 2.0 * dots[i]);
      neighbours[i] = {std::llround(d2 / kDistanceResolution), labelled[i]};
    }
    std::partial_sort(neighbours.begin(), neighbours.begin() + static_cast<std::ptrdiff_t>(take), neighbours.end());

    std::fill(votes.begin(), votes.end(), 0);
    std::fill(nearest_rank.begin(), nearest_rank.end(), take);
    for (std::size_t r = 0; r < take; ++r) {
      const auto c = *seeds.cluster_of[neighbours[r].doc];
      ++votes[c];
      nearest_rank[c] = std::min(nearest_rank[c], r);
    }
    std::uint32_t winner = 0;
    for (std::uint32_t c = 1; c < seeds.cluster_count; ++c) {
      if (votes[c] > votes[winner] || (votes[c] == votes[winner] && nearest_rank[c] < nearest_rank[winner]))
        winner = c;
    }
    out.cluster_of[u] = winner;
  }
  return out;
}

void write_assignment_csv(std::ostream& out, const InvertedIndex& index, const ClusterAssignment* seeds,
                          const ClusterAssignment& final_assignment) {
  out << "docId,label,clusterIndex,assignedBy\n";
  for (DocId d = 0; d < final_assignment.doc_count(); ++d) {
    out << csv_escape(index.doc_id(d)) << ',' << (index.label(d) ? csv_escape(*index.label(d)) : std::string()) << ',';
    if (final_assignment.cluster_of[d]) out << *final_assignment.cluster_of[d];
    out << ',';
    if (!final_assignment.cluster_of[d])
      out << "none";
    else if (seeds == nullptr)
      out << "kmeans";
    else
      out << (seeds->cluster_of[d] ? "query" : "knn");
    out << '\n';
  }
}

}  // namespace esq
