#include <doctest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <esq/error.hpp>
#include <esq/wordlist.hpp>

#include "support.hpp"

using namespace esq;
using Big = boost::multiprecision::cpp_bin_float_100;

namespace {

// Π_{d ∋ t} #(t,d)·|2 − IDF(t)| evaluated directly in 100-digit floating
// point. The sqrt is monotone, so comparing products compares TFIDF(t).
Big direct_product(const InvertedIndex& index, TermId t) {
  const Big idf = boost::multiprecision::log(Big(1) + Big(index.doc_count()) / Big(index.doc_freq(t)));
  const Big factor = boost::multiprecision::abs(Big(2) - idf);
  Big p = 1;
  for (const auto& posting : index.postings(t)) p *= Big(posting.count) * factor;
  return p;
}

}  // namespace

TEST_CASE("score examples") {
  auto corpus = Corpus::from_documents({test::doc("a", {{"t", 2}}), test::doc("b", {{"t", 3}}),
                                        test::doc("c", {{"u", 1}}), test::doc("d", {{"v", 1}})});
  auto index = InvertedIndex::build(corpus);
  CHECK(inverse_doc_freq(index, *index.find("t")) == doctest::Approx(std::log(3.0)));
  CHECK(term_score(index, "t") == doctest::Approx(1.5841).epsilon(1e-4));
  const double expected = std::log(2.0) + std::log(3.0) + 2.0 * std::log(std::abs(2.0 - std::log(3.0)));
  CHECK(std::abs(term_score(index, "t") - expected) < 1e-12);
  CHECK(term_score(index, "u") == doctest::Approx(-0.940).epsilon(1e-3));
  CHECK(term_score(index, "u") == term_score(index, "v"));
  CHECK_THROWS_AS(term_score(index, "zzz"), Error);
}

TEST_CASE("a term with IDF exactly 2 never makes the list") {
  // No integer N/DF gives ln(1 + N/DF) == 2 exactly, so check the guard
  // through the finite path instead: every listed score is finite.
  Rng rng = make_rng({8});
  auto index = InvertedIndex::build(test::random_corpus(rng, 40, 30));
  for (const auto& e : build_wordlist(index).entries()) CHECK(std::isfinite(e.score));
}

TEST_CASE("log-space ranking agrees with the direct product") {
  Rng rng = make_rng({31});
  int compared = 0;
  for (int trial = 0; trial < 150; ++trial) {
    auto index = InvertedIndex::build(test::random_corpus(rng, 2 + uniform_index(rng, 15), 10, 5));
    for (TermId a = 0; a < index.term_count(); ++a) {
      for (TermId b = a + 1; b < index.term_count(); ++b) {
        const Big pa = direct_product(index, a);
        const Big pb = direct_product(index, b);
        const double sa = term_score(index, a);
        const double sb = term_score(index, b);
        // ln of the exact products, to judge which pairs are far enough apart
        // for double precision to be decisive.
        const Big gap = boost::multiprecision::abs(boost::multiprecision::log(pa) - boost::multiprecision::log(pb));
        if (gap < Big(1e-9)) {
          CHECK(std::abs(sa - sb) < 1e-9);
          continue;
        }
        ++compared;
        CHECK((pa > pb) == (sa > sb));
      }
    }
  }
  CHECK(compared > 1000);
}

TEST_CASE("word list size and order") {
  std::vector<TokenizedDocument> docs;
  const char* words[] = {"space", "nasa", "god", "orbit", "hockey", "file", "sale", "game"};
  for (int i = 0; i < 20; ++i) {
    std::map<std::string, std::uint32_t> terms;
    for (int w = 0; w < 8; ++w)
      if ((i + w) % 3 == 0) terms[words[w]] = 1 + (i * w) % 4;
    docs.push_back(test::doc("d" + std::to_string(i), terms));
  }
  auto index = InvertedIndex::build(Corpus::from_documents(docs));
  REQUIRE(index.term_count() == 8);
  auto list = build_wordlist(index, 100);
  CHECK(list.size() == 8);
  for (std::size_t r = 1; r < list.size(); ++r) {
    CHECK(list[r - 1].score >= list[r].score);
    if (list[r - 1].score == list[r].score) CHECK(list[r - 1].term < list[r].term);
  }
  CHECK(build_wordlist(index, 3).size() == 3);
}

TEST_CASE("exactly size entries when the vocabulary is larger") {
  Rng rng = make_rng({2});
  auto index = InvertedIndex::build(test::random_corpus(rng, 300, 400, 12));
  REQUIRE(index.term_count() >= 100);
  auto list = build_wordlist(index);
  CHECK(list.size() == 100);
  // The top 100 are the 100 best scores.
  std::vector<double> all;
  for (TermId t = 0; t < index.term_count(); ++t) all.push_back(term_score(index, t));
  std::sort(all.rbegin(), all.rend());
  CHECK(list[99].score == all[99]);
}

TEST_CASE("word list ignores document order") {
  Rng rng = make_rng({17});
  for (int trial = 0; trial < 20; ++trial) {
    auto corpus = test::random_corpus(rng, 60, 50, 10);
    auto shuffled = corpus;
    for (std::size_t i = shuffled.documents.size(); i > 1; --i)
      std::swap(shuffled.documents[i - 1], shuffled.documents[uniform_index(rng, i)]);
    auto a = build_wordlist(InvertedIndex::build(corpus), 20);
    auto b = build_wordlist(InvertedIndex::build(shuffled), 20);
    REQUIRE(a.size() == b.size());
    for (std::size_t r = 0; r < a.size(); ++r) {
      CHECK(a[r].term == b[r].term);
      CHECK(a[r].score == b[r].score);
    }
  }
}

TEST_CASE("word list CSV") {
  auto index = test::toy_index();
  auto list = build_wordlist(index, 3);
  std::ostringstream out;
  write_wordlist_csv(out, list);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "term,score,rank");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 3);
}
