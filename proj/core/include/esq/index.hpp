#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "esq/corpus.hpp"
#include "esq/doc_set.hpp"

namespace esq {

using TermId = std::uint32_t;

struct Posting {
  DocId doc;
  std::uint32_t count;  // #(t,d) >= 1
  friend bool operator==(const Posting&, const Posting&) = default;
};

struct TermCount {
  TermId term;
  std::uint32_t count;
};

/// Immutable inverted index over a corpus.
///
/// Document ordinals follow corpus order. Term ids follow lexicographic term
/// order, so comparing ids compares terms. Each term also carries a DocSet
/// (its δ(w)) so disjunctions and intersections are word-parallel.
class InvertedIndex {
 public:
  /// Throws esq::Error on an empty corpus.
  static InvertedIndex build(const Corpus& corpus);

  std::size_t doc_count() const noexcept { return doc_ids_.size(); }
  std::size_t term_count() const noexcept { return terms_.size(); }

  std::optional<TermId> find(std::string_view term) const;
  const std::string& term(TermId id) const { return terms_.at(id); }
  std::span<const std::string> terms() const noexcept { return terms_; }

  std::span<const Posting> postings(TermId id) const { return postings_.at(id); }
  std::span<const Posting> postings(std::string_view term) const;
  const DocSet& docs_with(TermId id) const { return doc_sets_.at(id); }

  std::size_t doc_freq(TermId id) const { return postings_.at(id).size(); }
  std::size_t doc_freq(std::string_view term) const;

  /// Union of δ(w) over the given words; unknown words contribute nothing.
  DocSet match_any(std::span<const std::string> words) const;
  DocSet match_any(std::span<const TermId> words) const;

  /// |δ(a) ∩ δ(b)|
  std::size_t and_count(std::string_view a, std::string_view b) const;
  std::size_t and_count(TermId a, TermId b) const;

  std::span<const TermCount> doc_terms(DocId doc) const { return doc_terms_.at(doc); }
  const std::string& doc_id(DocId doc) const { return doc_ids_.at(doc); }
  const std::optional<std::string>& label(DocId doc) const { return labels_.at(doc); }
  std::span<const std::string> label_names() const noexcept { return label_names_; }

  DocSet empty_set() const { return DocSet(doc_count()); }

  /// Tokenized corpus view of the index (inverse of build).
  Corpus to_corpus() const;

  /// JSON dump; the schema is documented in README.md.
  void save(const std::filesystem::path& path) const;
  static InvertedIndex load(const std::filesystem::path& path);

 private:
  std::vector<std::string> terms_;
  std::unordered_map<std::string, TermId> term_ids_;
  std::vector<std::vector<Posting>> postings_;
  std::vector<DocSet> doc_sets_;
  std::vector<std::vector<TermCount>> doc_terms_;
  std::vector<std::string> doc_ids_;
  std::vector<std::optional<std::string>> labels_;
  std::vector<std::string> label_names_;
};

inline InvertedIndex build_index(const Corpus& corpus) { return InvertedIndex::build(corpus); }

}  // namespace esq
