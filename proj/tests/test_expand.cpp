#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include <esq/error.hpp>
#include <esq/expand.hpp>

#include "support.hpp"

using namespace esq;

namespace {

// Dense TF-IDF straight from the corpus, independent of vectorize().
std::vector<std::vector<long double>> dense_vectors(const Corpus& corpus) {
  std::map<std::string, std::size_t> df;
  for (const auto& d : corpus.documents)
    for (const auto& [t, c] : d.terms) ++df[t];
  std::map<std::string, std::size_t> column;
  for (const auto& [t, n] : df) column.emplace(t, column.size());
  const auto n_docs = static_cast<long double>(corpus.size());
  std::vector<std::vector<long double>> out;
  for (const auto& d : corpus.documents) {
    std::vector<long double> v(column.size(), 0.0L);
    long double norm = 0.0L;
    for (const auto& [t, c] : d.terms) {
      v[column[t]] = c * std::log(1.0L + n_docs / static_cast<long double>(df[t]));
      norm += v[column[t]] * v[column[t]];
    }
    if (norm > 0)
      for (auto& x : v) x /= std::sqrt(norm);
    out.push_back(v);
  }
  return out;
}

// Full pairwise sort, then vote with the documented tie rules.
ClusterAssignment oracle_expand(const Corpus& corpus, const ClusterAssignment& seeds, std::size_t k) {
  const auto vectors = dense_vectors(corpus);
  ClusterAssignment out = seeds;
  for (std::size_t u = 0; u < corpus.size(); ++u) {
    if (seeds.cluster_of[u]) continue;
    std::vector<std::pair<long long, std::size_t>> cand;
    for (std::size_t s = 0; s < corpus.size(); ++s) {
      if (!seeds.cluster_of[s]) continue;
      long double d2 = 0;
      for (std::size_t j = 0; j < vectors[u].size(); ++j) d2 += (vectors[u][j] - vectors[s][j]) * (vectors[u][j] - vectors[s][j]);
      cand.emplace_back(std::llround(static_cast<double>(d2) / kDistanceResolution), s);
    }
    std::sort(cand.begin(), cand.end());
    cand.resize(std::min(k, cand.size()));
    std::map<std::uint32_t, std::size_t> votes;
    for (const auto& [d, s] : cand) ++votes[*seeds.cluster_of[s]];
    std::size_t best = 0;
    for (const auto& [c, n] : votes) best = std::max(best, n);
    for (const auto& [d, s] : cand) {
      if (votes[*seeds.cluster_of[s]] == best) {
        out.cluster_of[u] = *seeds.cluster_of[s];
        break;
      }
    }
  }
  return out;
}

}  // namespace

TEST_CASE("vectorize examples") {
  auto index = test::toy_index();
  auto v = vectorize(index, 1);  // d2 {space, nasa}
  REQUIRE(v.size() == 2);
  CHECK(v[0].second == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(v[1].second == doctest::Approx(1.0 / std::sqrt(2.0)));

  auto one = InvertedIndex::build(Corpus::from_documents({test::doc("a", {{"t", 3}}), test::doc("b", {})}));
  auto va = vectorize(one, 0);
  REQUIRE(va.size() == 1);
  CHECK(va[0].second == doctest::Approx(1.0));
  CHECK(vectorize(one, 1).empty());
}

TEST_CASE("knn example on the toy corpus") {
  auto index = test::toy_index();
  ClusterAssignment seeds(6, 2);
  seeds.cluster_of[0] = 0;
  seeds.cluster_of[1] = 0;
  seeds.cluster_of[3] = 1;
  seeds.cluster_of[4] = 1;
  auto out = knn_expand(index, seeds, 10);
  CHECK(out.cluster_of[5] == 1u);
  CHECK(out.is_total());
}

TEST_CASE("knn degenerate inputs") {
  auto index = test::toy_index();
  ClusterAssignment total(6, 2);
  for (DocId d = 0; d < 6; ++d) total.cluster_of[d] = d % 2;
  CHECK(knn_expand(index, total) == total);

  ClusterAssignment single(6, 1);
  single.cluster_of[2] = 0;
  auto out = knn_expand(index, single);
  for (const auto& c : out.cluster_of) CHECK(c == 0u);

  CHECK_THROWS_AS(knn_expand(index, ClusterAssignment(6, 2)), Error);
}

TEST_CASE("knn agrees with a brute-force oracle") {
  Rng rng = make_rng({404});
  for (int trial = 0; trial < 300; ++trial) {
    auto corpus = test::random_corpus(rng, 2 + uniform_index(rng, 40), 10, 5);
    auto index = InvertedIndex::build(corpus);
    const auto clusters = 1 + static_cast<std::uint32_t>(uniform_index(rng, 4));
    ClusterAssignment seeds(corpus.size(), clusters);
    for (auto& c : seeds.cluster_of)
      if (bernoulli(rng, 0.5)) c = static_cast<std::uint32_t>(uniform_index(rng, clusters));
    if (seeds.assigned_count() == 0) seeds.cluster_of[0] = 0;
    const std::size_t k = 1 + uniform_index(rng, 10);

    const auto out = knn_expand(index, seeds, k);
    CHECK(out.is_total());
    for (std::size_t d = 0; d < corpus.size(); ++d)
      if (seeds.cluster_of[d]) CHECK(out.cluster_of[d] == seeds.cluster_of[d]);
    CHECK(out == oracle_expand(corpus, seeds, k));
  }
}

TEST_CASE("assignment CSV") {
  auto index = test::toy_index();
  ClusterAssignment seeds(6, 2);
  seeds.cluster_of[0] = 0;
  seeds.cluster_of[3] = 1;
  auto out = knn_expand(index, seeds, 1);
  std::ostringstream csv;
  write_assignment_csv(csv, index, &seeds, out);
  std::istringstream in(csv.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "docId,label,clusterIndex,assignedBy");
  std::getline(in, line);
  CHECK(line == "d1,X,0,query");
  std::getline(in, line);
  CHECK(line.substr(line.rfind(',') + 1) == "knn");
}
