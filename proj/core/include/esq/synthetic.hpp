#pragma once

// Seeded generators for labelled test corpora.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "esq/corpus.hpp"

namespace esq {

/// Classes with mutually disjoint vocabularies; every document draws all of
/// its tokens from its own class's words.
struct BlockCorpusConfig {
  std::size_t classes = 3;
  std::size_t docs_per_class = 100;
  std::size_t vocab_per_class = 20;
  std::size_t min_length = 8;
  std::size_t max_length = 20;
  std::uint64_t seed = 1;
};

std::vector<RawDocument> block_corpus(const BlockCorpusConfig& config);

/// The built-in stop words ordered by typical English frequency.
std::vector<std::string> english_function_words();

/// Topic-mixture corpus resembling a newsgroup/newswire sample: a large
/// Zipfian background vocabulary shared by all classes, a Zipfian topical
/// vocabulary per class, optional topical words shared by every class,
/// off-topic documents and cross-posted tokens.
///
/// The top background ranks are real English function words, so the stop
/// list removes the most frequent tokens just as it does on real text.
struct TopicCorpusConfig {
  std::vector<std::string> class_names;
  std::size_t docs_per_class = 400;
  /// Background vocabulary size, function words included.
  std::size_t background_vocab = 20000;
  /// Emitted for background ranks 0, 1, ...; later ranks are pseudo-words.
  std::vector<std::string> function_words = english_function_words();
  std::size_t topic_vocab = 300;
  /// Topical words common to all classes (overlapping vocabularies).
  std::size_t shared_topic_vocab = 0;
  /// Share of topical draws that come from the shared pool.
  double shared_topic_weight = 0.0;
  double zipf_exponent = 1.0;
  /// Per-document topical share is drawn uniformly in [min, max].
  double topic_share_min = 0.05;
  double topic_share_max = 0.35;
  /// Probability a topical token comes from a different class.
  double cross_topic_rate = 0.05;
  /// Burstiness: probability a token repeats one already drawn from the same
  /// source in this document (Polya urn), separately for the two sources.
  double topic_burst_rate = 0.0;
  double background_burst_rate = 0.0;
  /// Probability a document carries no topical tokens at all.
  double off_topic_rate = 0.05;
  /// Document length is exp(N(ln(median_length), length_sigma)), clamped.
  double median_length = 150.0;
  double length_sigma = 0.7;
  std::size_t min_length = 10;
  std::size_t max_length = 1000;
  std::uint64_t seed = 1;
};

std::vector<RawDocument> topic_corpus(const TopicCorpusConfig& config);

/// Named presets: "blocks3" (3 x 100, disjoint 20-word vocabularies),
/// "ng3-like", "ng5-like", "ng6-like" (400 docs per class),
/// "r4-like" (4 overlapping classes, 200 docs per class).
std::vector<RawDocument> synthetic_preset(std::string_view name, std::uint64_t seed);
std::vector<std::string> synthetic_preset_names();

/// Deterministic pronounceable pseudo-word for an ordinal; distinct ordinals
/// give distinct words, each at least 4 letters long.
std::string pseudo_word(std::size_t ordinal);

}  // namespace esq
