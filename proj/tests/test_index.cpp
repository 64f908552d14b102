#include <doctest.h>

#include <algorithm>
#include <fstream>

#include <esq/error.hpp>
#include <esq/index.hpp>

#include "support.hpp"

using namespace esq;

namespace {

std::vector<DocId> docs_of(const DocSet& s) { return s.to_vector(); }

std::vector<std::string> words(std::initializer_list<const char*> w) { return {w.begin(), w.end()}; }

}  // namespace

TEST_CASE("postings of the toy corpus") {
  auto index = test::toy_index();
  CHECK(index.doc_count() == 6);
  auto p = index.postings("space");
  CHECK(std::vector<Posting>(p.begin(), p.end()) == std::vector<Posting>{{0, 1}, {1, 1}});
  CHECK(index.postings("zzz").empty());
  CHECK(index.doc_freq("space") == 2);
  CHECK(index.doc_freq("game") == 3);
  CHECK(index.doc_freq("zzz") == 0);
}

TEST_CASE("single document index") {
  auto index = InvertedIndex::build(Corpus::from_documents({test::doc("only", {{"a", 2}})}));
  CHECK(index.doc_count() == 1);
  auto p = index.postings("a");
  CHECK(std::vector<Posting>(p.begin(), p.end()) == std::vector<Posting>{{0, 2}});
  CHECK_THROWS_AS(InvertedIndex::build(Corpus{}), Error);
}

TEST_CASE("match_any and and_count on the toy corpus") {
  auto index = test::toy_index();
  CHECK(docs_of(index.match_any(words({"space", "hockey"}))) == std::vector<DocId>{0, 1, 3, 4});
  CHECK(index.match_any(std::vector<std::string>{}).empty());
  CHECK(docs_of(index.match_any(words({"moon"}))) == std::vector<DocId>{2});
  CHECK(docs_of(index.match_any(words({"moon", "unknown"}))) == std::vector<DocId>{2});
  CHECK(index.and_count("nasa", "space") == 2);
  CHECK(index.and_count("space", "space") == 2);
  CHECK(index.and_count("space", "hockey") == 0);
  CHECK(index.and_count("space", "zzz") == 0);
}

TEST_CASE("term ids follow lexicographic order") {
  auto index = test::toy_index();
  auto terms = index.terms();
  CHECK(std::is_sorted(terms.begin(), terms.end()));
  for (TermId id = 0; id < index.term_count(); ++id) CHECK(index.find(index.term(id)) == id);
  CHECK_FALSE(index.find("zzz").has_value());
}

TEST_CASE("index properties against a per-document scan") {
  Rng rng = make_rng({21});
  for (int trial = 0; trial < 200; ++trial) {
    const auto corpus = test::random_corpus(rng, 1 + uniform_index(rng, 40), 12);
    const auto index = InvertedIndex::build(corpus);
    std::vector<std::string> vocab;
    for (int i = 0; i < 12; ++i) vocab.push_back("w" + std::to_string(i));

    for (const auto& w : vocab) {
      CHECK(index.match_any(std::vector<std::string>{w}).count() == index.doc_freq(w));
      // Postings agree with the documents' own counts.
      std::vector<Posting> expected;
      for (DocId d = 0; d < corpus.size(); ++d)
        if (auto it = corpus.documents[d].terms.find(w); it != corpus.documents[d].terms.end())
          expected.push_back({d, it->second});
      auto p = index.postings(w);
      CHECK(std::vector<Posting>(p.begin(), p.end()) == expected);
      for (const auto& v : vocab) {
        const auto ab = index.and_count(w, v);
        CHECK(ab == index.and_count(v, w));
        CHECK(ab <= std::min(index.doc_freq(w), index.doc_freq(v)));
      }
    }

    std::vector<std::string> a, b;
    for (const auto& w : vocab) {
      if (bernoulli(rng, 0.3)) a.push_back(w);
      if (bernoulli(rng, 0.3)) b.push_back(w);
    }
    std::vector<std::string> ab = a;
    ab.insert(ab.end(), b.begin(), b.end());
    const auto ma = index.match_any(a);
    const auto mb = index.match_any(b);
    CHECK(index.match_any(ab) == (ma | mb));
    CHECK(ma.is_subset_of(index.match_any(ab)));

    DocSet scan = index.empty_set();
    for (DocId d = 0; d < corpus.size(); ++d)
      for (const auto& w : a)
        if (corpus.documents[d].terms.contains(w)) scan.insert(d);
    CHECK(ma == scan);
  }
}

TEST_CASE("save and load round-trip") {
  test::TempDir dir;
  Rng rng = make_rng({4});
  const auto corpus = test::random_corpus(rng, 30, 20);
  const auto index = InvertedIndex::build(corpus);
  index.save(dir / "i.json");
  const auto loaded = InvertedIndex::load(dir / "i.json");
  CHECK(loaded.doc_count() == index.doc_count());
  CHECK(std::vector<std::string>(loaded.terms().begin(), loaded.terms().end()) ==
        std::vector<std::string>(index.terms().begin(), index.terms().end()));
  for (TermId t = 0; t < index.term_count(); ++t) {
    auto a = index.postings(t);
    auto b = loaded.postings(t);
    CHECK(std::vector<Posting>(a.begin(), a.end()) == std::vector<Posting>(b.begin(), b.end()));
    CHECK(loaded.docs_with(t) == index.docs_with(t));
  }
  const auto back = loaded.to_corpus();
  CHECK(back.documents == corpus.documents);
  CHECK(back.label_names == corpus.label_names);
}

TEST_CASE("loading a malformed index fails") {
  test::TempDir dir;
  {
    std::ofstream out(dir / "bad.json");
    out << "{\"format\":\"something-else\"}";
  }
  CHECK_THROWS_AS(InvertedIndex::load(dir / "bad.json"), Error);
  {
    std::ofstream out(dir / "range.json");
    out << R"({"format":"esq-index","version":1,"docCount":1,"labelNames":[],"documents":[{"id":"a","label":null}],"postings":{"x":[[3,1]]}})";
  }
  CHECK_THROWS_AS(InvertedIndex::load(dir / "range.json"), Error);
}
