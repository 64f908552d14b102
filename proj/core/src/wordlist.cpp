#include "esq/wordlist.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>

#include "esq/error.hpp"

namespace esq {

WordList::WordList(std::vector<WordEntry> entries) : entries_(std::move(entries)) {
  for (std::size_t i = 1; i < entries_.size(); ++i)
    if (entries_[i].score > entries_[i - 1].score) throw Error("word list is not sorted by score");
}

double inverse_doc_freq(const InvertedIndex& index, TermId term) {
  const auto df = static_cast<double>(index.doc_freq(term));
  return std::log(1.0 + static_cast<double>(index.doc_count()) / df);
}

double term_score(const InvertedIndex& index, TermId term) {
  const double factor = std::abs(2.0 - inverse_doc_freq(index, term));
  if (factor == 0.0) return -std::numeric_limits<double>::infinity();
  const double log_factor = std::log(factor);
  // Summing in count order makes the result independent of document order.
  std::vector<std::uint32_t> counts;
  counts.reserve(index.doc_freq(term));
  for (const auto& p : index.postings(term)) counts.push_back(p.count);
  std::sort(counts.begin(), counts.end());
  double log_tf = 0.0;
  for (auto c : counts) log_tf += std::log(static_cast<double>(c));
  return log_tf + static_cast<double>(counts.size()) * log_factor;
}

double term_score(const InvertedIndex& index, std::string_view term) {
  auto id = index.find(term);
  if (!id) throw Error("term '" + std::string(term) + "' is not in the index");
  return term_score(index, *id);
}

WordList build_wordlist(const InvertedIndex& index, std::size_t size) {
  std::vector<WordEntry> scored;
  scored.reserve(index.term_count());
  for (TermId t = 0; t < index.term_count(); ++t) {
    const double s = term_score(index, t);
    if (std::isinf(s)) continue;
    scored.push_back({index.term(t), t, s});
  }
  // Term ids are in lexicographic order, so the id is the tie-break.
  auto better = [](const WordEntry& a, const WordEntry& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.id < b.id;
  };
  const auto keep = std::min(size, scored.size());
  std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(keep), scored.end(), better);
  scored.resize(keep);
  return WordList(std::move(scored));
}

void write_wordlist_csv(std::ostream& out, const WordList& words) {
  out << "term,score,rank\n";
  const auto old_precision = out.precision(std::numeric_limits<double>::max_digits10);
  for (std::size_t r = 0; r < words.size(); ++r) out << words[r].term << ',' << words[r].score << ',' << r << '\n';
  out.precision(old_precision);
}

}  // namespace esq
