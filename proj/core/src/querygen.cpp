#include "esq/querygen.hpp"

#include <algorithm>
#include <sstream>

#include "esq/error.hpp"

namespace esq {

std::size_t DecodeConfig::word_gene_count() const {
  const int k = discover_k ? k_max : fixed_k;
  return static_cast<std::size_t>(k) * static_cast<std::size_t>(max_words_per_query);
}

void DecodeConfig::validate() const {
  if (!(intersect_threshold >= 0.0 && intersect_threshold <= 1.0))
    throw Error("intersectThreshold must lie in [0, 1]");
  if (max_words_per_query < 1) throw Error("maxWordsPerQuery must be >= 1");
  if (discover_k) {
    if (k_min < 2) throw Error("kMin must be >= 2");
    if (k_max < k_min) throw Error("kMax must be >= kMin");
  } else if (fixed_k < 1) {
    throw Error("k must be >= 1");
  }
}

std::size_t QuerySet::non_empty_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(queries.begin(), queries.end(), [](const Query& q) { return !q.empty(); }));
}

std::string QuerySet::to_text() const {
  std::ostringstream out;
  std::size_t cluster = 0;
  for (const auto& q : queries) {
    if (q.empty()) continue;
    out << "cluster " << cluster++ << ':';
    for (std::size_t i = 0; i < q.words.size(); ++i) out << (i == 0 ? " " : " OR ") << q.words[i];
    out << '\n';
  }
  return out.str();
}

double intersect_ratio(const InvertedIndex& index, std::string_view root_word, std::string_view new_word) {
  const auto df = index.doc_freq(new_word);
  if (df == 0) return 0.0;
  return static_cast<double>(index.and_count(root_word, new_word)) / static_cast<double>(df);
}

QueryDecoder::QueryDecoder(const InvertedIndex& index, const WordList& words, DecodeConfig config)
    : index_(&index), words_(&words), config_(config) {
  config_.validate();
  if (words.empty()) throw Error("cannot decode against an empty word list");
  const auto n = words.size();
  and_counts_.resize(n * n);
  doc_freqs_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    doc_freqs_[i] = index.doc_freq(words[i].id);
    for (std::size_t j = 0; j < n; ++j) and_counts_[i * n + j] = index.and_count(words[i].id, words[j].id);
  }
}

int QueryDecoder::declared_k(const Chromosome& chromosome) const {
  if (!config_.discover_k) return config_.fixed_k;
  if (!chromosome.k_gene) throw Error("chromosome lacks a k gene in discovered-k mode");
  return std::clamp(*chromosome.k_gene, config_.k_min, config_.k_max);
}

QuerySet QueryDecoder::decode(const Chromosome& chromosome) const {
  if (!config_.discover_k && chromosome.k_gene) throw Error("chromosome has a k gene in fixed-k mode");
  const int k = declared_k(chromosome);
  const auto n = words_->size();

  QuerySet set;
  set.declared_k = k;
  set.queries.resize(static_cast<std::size_t>(k));
  std::vector<std::size_t> roots(static_cast<std::size_t>(k), n);
  std::vector<bool> used(n, false);

  for (std::size_t i = 0; i < chromosome.word_genes.size(); ++i) {
    const auto gene = static_cast<long long>(chromosome.word_genes[i]);
    const auto rank = static_cast<std::size_t>(((gene % static_cast<long long>(n)) + static_cast<long long>(n)) %
                                               static_cast<long long>(n));
    if (used[rank]) continue;
    const auto slot = i % static_cast<std::size_t>(k);
    auto& query = set.queries[slot];
    if (query.empty()) {
      roots[slot] = rank;
    } else {
      const double ratio = doc_freqs_[rank] == 0 ? 0.0
                                                 : static_cast<double>(and_counts_[roots[slot] * n + rank]) /
                                                       static_cast<double>(doc_freqs_[rank]);
      if (ratio < config_.intersect_threshold) continue;
    }
    used[rank] = true;
    query.words.push_back((*words_)[rank].term);
    query.terms.push_back((*words_)[rank].id);
  }
  return set;
}

QuerySet decode(const Chromosome& chromosome, const WordList& words, const InvertedIndex& index,
                const DecodeConfig& config) {
  return QueryDecoder(index, words, config).decode(chromosome);
}

}  // namespace esq
