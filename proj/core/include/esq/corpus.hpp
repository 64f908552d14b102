#pragma once

// Document loading, tokenization and per-category sampling.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace esq {

struct RawDocument {
  std::string id;
  std::string text;
  std::optional<std::string> label;

  friend bool operator==(const RawDocument&, const RawDocument&) = default;
};

/// term -> #(t,d); every stored count is >= 1.
using TermCounts = std::map<std::string, std::uint32_t, std::less<>>;

struct TokenizedDocument {
  std::string id;
  TermCounts terms;
  std::optional<std::string> label;

  std::size_t length() const noexcept;
  friend bool operator==(const TokenizedDocument&, const TokenizedDocument&) = default;
};

struct Corpus {
  std::vector<TokenizedDocument> documents;
  /// Distinct labels, sorted. Empty when nothing is labelled.
  std::vector<std::string> label_names;

  /// Builds a corpus, deriving label_names and rejecting duplicate ids.
  static Corpus from_documents(std::vector<TokenizedDocument> docs);

  std::size_t size() const noexcept { return documents.size(); }
  bool empty() const noexcept { return documents.empty(); }
  bool labelled() const noexcept { return !label_names.empty(); }
};

enum class CorpusFormat { jsonl, category_dirs, csv };

CorpusFormat parse_corpus_format(std::string_view name);
std::string_view to_string(CorpusFormat format);

/// Field names (jsonl) or header column names (csv). An id field/column
/// that is missing falls back to the record ordinal.
struct LoadOptions {
  std::string id_field = "id";
  std::string text_field = "text";
  std::string label_field = "label";
};

/// Loads raw documents. Throws esq::Error on unreadable input or on any
/// malformed record, with a file:line locator.
std::vector<RawDocument> load_corpus(const std::filesystem::path& path, CorpusFormat format,
                                     const LoadOptions& options = {});

void write_jsonl(const std::filesystem::path& path, std::span<const RawDocument> docs);

using StopSet = std::set<std::string, std::less<>>;

/// The shipped stop list (see data/stopwords.txt for the same list).
const StopSet& default_stop_set();

/// One lowercase word per line; blank lines and '#' comments ignored.
StopSet load_stop_set(const std::filesystem::path& path);

/// Lowercases ASCII, splits on every byte that is not an ASCII letter/digit
/// (bytes >= 0x80 are kept as word characters so UTF-8 words stay whole),
/// drops tokens shorter than 2 bytes and stop words, then counts.
TokenizedDocument tokenize(const RawDocument& doc, const StopSet& stop_set);

Corpus tokenize_all(std::span<const RawDocument> docs, const StopSet& stop_set);

/// Draws exactly n documents per label without replacement. Output keeps
/// the input's relative order. Unlabelled documents are not sampled.
Corpus sample_per_category(const Corpus& corpus, std::size_t n, std::uint64_t seed);

}  // namespace esq
