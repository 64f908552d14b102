#include "esq/index.hpp"

#include <algorithm>
#include <fstream>
#include <map>

#include <json.hpp>

#include "esq/error.hpp"

namespace esq {

using nlohmann::ordered_json;

InvertedIndex InvertedIndex::build(const Corpus& corpus) {
  if (corpus.empty()) throw Error("cannot build an index over an empty corpus");

  InvertedIndex index;
  std::map<std::string_view, std::vector<Posting>> by_term;
  for (std::size_t d = 0; d < corpus.documents.size(); ++d) {
    const auto& doc = corpus.documents[d];
    for (const auto& [term, count] : doc.terms) {
      if (count == 0) throw Error("document '" + doc.id + "' stores term '" + term + "' with count 0");
      by_term[term].push_back({static_cast<DocId>(d), count});
    }
  }

  const std::size_t n = corpus.documents.size();
  index.terms_.reserve(by_term.size());
  index.postings_.reserve(by_term.size());
  index.doc_sets_.reserve(by_term.size());
  index.doc_terms_.resize(n);
  for (auto& [term, postings] : by_term) {
    const auto id = static_cast<TermId>(index.terms_.size());
    index.terms_.emplace_back(term);
    index.term_ids_.emplace(std::string(term), id);
    DocSet set(n);
    for (const auto& p : postings) {
      set.insert(p.doc);
      index.doc_terms_[p.doc].push_back({id, p.count});
    }
    index.doc_sets_.push_back(std::move(set));
    index.postings_.push_back(std::move(postings));
  }

  index.doc_ids_.reserve(n);
  index.labels_.reserve(n);
  for (const auto& doc : corpus.documents) {
    index.doc_ids_.push_back(doc.id);
    index.labels_.push_back(doc.label);
  }
  index.label_names_ = corpus.label_names;
  return index;
}

std::optional<TermId> InvertedIndex::find(std::string_view term) const {
  auto it = term_ids_.find(std::string(term));
  if (it == term_ids_.end()) return std::nullopt;
  return it->second;
}

std::span<const Posting> InvertedIndex::postings(std::string_view term) const {
  if (auto id = find(term)) return postings_[*id];
  return {};
}

std::size_t InvertedIndex::doc_freq(std::string_view term) const {
  if (auto id = find(term)) return postings_[*id].size();
  return 0;
}

DocSet InvertedIndex::match_any(std::span<const std::string> words) const {
  DocSet out(doc_count());
  for (const auto& w : words)
    if (auto id = find(w)) out |= doc_sets_[*id];
  return out;
}

DocSet InvertedIndex::match_any(std::span<const TermId> words) const {
  DocSet out(doc_count());
  for (auto id : words) out |= doc_sets_.at(id);
  return out;
}

std::size_t InvertedIndex::and_count(std::string_view a, std::string_view b) const {
  auto ia = find(a);
  auto ib = find(b);
  if (!ia || !ib) return 0;
  return and_count(*ia, *ib);
}

std::size_t InvertedIndex::and_count(TermId a, TermId b) const {
  return DocSet::intersection_count(doc_sets_.at(a), doc_sets_.at(b));
}

Corpus InvertedIndex::to_corpus() const {
  Corpus corpus;
  corpus.label_names = label_names_;
  corpus.documents.reserve(doc_count());
  for (std::size_t d = 0; d < doc_count(); ++d) {
    TokenizedDocument doc{doc_ids_[d], {}, labels_[d]};
    for (const auto& tc : doc_terms_[d]) doc.terms.emplace(terms_[tc.term], tc.count);
    corpus.documents.push_back(std::move(doc));
  }
  return corpus;
}

void InvertedIndex::save(const std::filesystem::path& path) const {
  ordered_json root;
  root["format"] = "esq-index";
  root["version"] = 1;
  root["docCount"] = doc_count();
  root["labelNames"] = label_names_;
  auto& docs = root["documents"] = ordered_json::array();
  for (std::size_t d = 0; d < doc_count(); ++d) {
    ordered_json doc;
    doc["id"] = doc_ids_[d];
    doc["label"] = labels_[d] ? ordered_json(*labels_[d]) : ordered_json(nullptr);
    docs.push_back(std::move(doc));
  }
  auto& postings = root["postings"] = ordered_json::object();
  for (std::size_t t = 0; t < term_count(); ++t) {
    auto& list = postings[terms_[t]] = ordered_json::array();
    for (const auto& p : postings_[t]) list.push_back({p.doc, p.count});
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << root.dump() << '\n';
  if (!out) throw Error("write failed: " + path.string());
}

InvertedIndex InvertedIndex::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  ordered_json root;
  try {
    root = ordered_json::parse(in);
  } catch (const ordered_json::exception& e) {
    throw Error(path.string() + ": malformed index JSON: " + e.what());
  }
  try {
    if (root.at("format") != "esq-index" || root.at("version") != 1)
      throw Error(path.string() + ": not an esq-index v1 file");
    const auto n = root.at("docCount").get<std::size_t>();
    const auto& docs = root.at("documents");
    if (docs.size() != n) throw Error(path.string() + ": docCount does not match documents");

    std::vector<TokenizedDocument> tokenized(n);
    for (std::size_t d = 0; d < n; ++d) {
      tokenized[d].id = docs[d].at("id").get<std::string>();
      if (!docs[d].at("label").is_null()) tokenized[d].label = docs[d].at("label").get<std::string>();
    }
    for (const auto& [term, list] : root.at("postings").items()) {
      DocId previous = 0;
      bool first = true;
      for (const auto& entry : list) {
        const auto doc = entry.at(0).get<DocId>();
        const auto count = entry.at(1).get<std::uint32_t>();
        if (doc >= n || count == 0 || (!first && doc <= previous))
          throw Error(path.string() + ": invalid postings for term '" + term + "'");
        tokenized[doc].terms.emplace(term, count);
        previous = doc;
        first = false;
      }
    }
    auto corpus = Corpus::from_documents(std::move(tokenized));
    corpus.label_names = root.at("labelNames").get<std::vector<std::string>>();
    return build(corpus);
  } catch (const ordered_json::exception& e) {
    throw Error(path.string() + ": malformed index JSON: " + e.what());
  }
}

}  // namespace esq
