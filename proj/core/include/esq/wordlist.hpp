#pragma once

#include <cstddef>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "esq/index.hpp"

namespace esq {

struct WordEntry {
  std::string term;
  TermId id;
  double score;
};

/// Fixed, ranked candidate words the GA draws its genes from.
/// Entries are distinct and non-increasing in score.
class WordList {
 public:
  WordList() = default;
  explicit WordList(std::vector<WordEntry> entries);

  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  const WordEntry& operator[](std::size_t rank) const { return entries_[rank]; }
  std::span<const WordEntry> entries() const noexcept { return entries_; }

 private:
  std::vector<WordEntry> entries_;
};

/// IDF(t) = ln(1 + |D| / DF(t))
double inverse_doc_freq(const InvertedIndex& index, TermId term);

/// Rank key for the modified TF*IDF weighting:
///   S(t) = Σ_{d ∋ t} [ ln #(t,d) + ln |2 − IDF(t)| ]
/// i.e. the log of sqrt(Π_{d ∋ t} #(t,d)·|2 − IDF(t)|) up to the factor 1/2,
/// which keeps the ordering and never overflows. Returns -inf when
/// IDF(t) == 2 exactly. Throws esq::Error for a term not in the index.
double term_score(const InvertedIndex& index, std::string_view term);
double term_score(const InvertedIndex& index, TermId term);

/// Top `size` terms by score, ties broken lexicographically. Terms scoring
/// -inf are excluded.
WordList build_wordlist(const InvertedIndex& index, std::size_t size = 100);

/// CSV with header `term,score,rank`.
void write_wordlist_csv(std::ostream& out, const WordList& words);

}  // namespace esq
