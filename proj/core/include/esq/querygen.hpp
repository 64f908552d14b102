#pragma once

// Chromosome -> set of disjunctive queries.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "esq/index.hpp"
#include "esq/wordlist.hpp"

namespace esq {

struct DecodeConfig {
  double intersect_threshold = 0.5;
  /// true: k is read from the chromosome's k gene in [k_min, k_max].
  bool discover_k = true;
  int fixed_k = 3;
  int k_min = 2;
  int k_max = 9;
  int max_words_per_query = 4;

  /// k_max (discovered) or fixed_k, times max_words_per_query.
  std::size_t word_gene_count() const;
  void validate() const;
};

struct Chromosome {
  std::optional<int> k_gene;
  std::vector<int> word_genes;

  friend bool operator==(const Chromosome&, const Chromosome&) = default;
};

/// A disjunction of words. words.front() is the root word; the rest were
/// admitted by the intersect test against it.
struct Query {
  std::vector<std::string> words;
  std::vector<TermId> terms;

  bool empty() const noexcept { return words.empty(); }
  const std::string& root() const { return words.front(); }
  std::vector<std::string> extra_words() const { return {words.begin() + (words.empty() ? 0 : 1), words.end()}; }
};

struct QuerySet {
  int declared_k = 0;
  std::vector<Query> queries;  // exactly declared_k slots, possibly empty

  std::size_t non_empty_count() const noexcept;
  /// One line per non-empty query, numbered in slot order over the
  /// non-empty queries only: `cluster 0: space OR orbit OR nasa`.
  std::string to_text() const;
};

/// and_count(root, word) / doc_freq(word); 0 when the word is unseen.
double intersect_ratio(const InvertedIndex& index, std::string_view root_word, std::string_view new_word);

/// Decoder bound to one index and word list. Pairwise co-occurrence counts
/// of the word list are computed once, so decode() is cheap enough to call
/// for every fitness evaluation.
class QueryDecoder {
 public:
  QueryDecoder(const InvertedIndex& index, const WordList& words, DecodeConfig config);

  /// Gene i goes to query (i mod k); genes are taken in genome order and map
  /// to word-list rank (gene mod L). Words already placed anywhere are
  /// skipped; the first word of a slot becomes its root and later words need
  /// intersect_ratio(root, word) >= threshold.
  QuerySet decode(const Chromosome& chromosome) const;

  /// k used for a chromosome: its k gene (clamped into range) or fixed_k.
  int declared_k(const Chromosome& chromosome) const;

  const DecodeConfig& config() const noexcept { return config_; }
  const WordList& words() const noexcept { return *words_; }
  const InvertedIndex& index() const noexcept { return *index_; }

 private:
  const InvertedIndex* index_;
  const WordList* words_;
  DecodeConfig config_;
  std::vector<std::size_t> and_counts_;  // L x L
  std::vector<std::size_t> doc_freqs_;
};

QuerySet decode(const Chromosome& chromosome, const WordList& words, const InvertedIndex& index,
                const DecodeConfig& config);

}  // namespace esq
