#include "esq/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "esq/csv.hpp"
#include "esq/error.hpp"
#include "esq/random.hpp"

namespace esq {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error("read failed: " + path.string());
  return buf.str();
}

std::string locator(const fs::path& path, std::size_t line) {
  return path.string() + ":" + std::to_string(line);
}

void check_unique_ids(const std::vector<RawDocument>& docs, const fs::path& path) {
  std::unordered_set<std::string> seen;
  for (const auto& d : docs) {
    if (d.id.empty()) throw Error(path.string() + ": empty document id");
    if (!seen.insert(d.id).second)
      throw Error(path.string() + ": duplicate document id '" + d.id + "'");
  }
}

std::vector<RawDocument> load_jsonl(const fs::path& path, const LoadOptions& opt) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  std::vector<RawDocument> docs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      throw Error(locator(path, line_no) + ": malformed JSON: " + e.what());
    }
    if (!obj.is_object()) throw Error(locator(path, line_no) + ": expected a JSON object");
    RawDocument doc;
    auto text = obj.find(opt.text_field);
    if (text == obj.end() || !text->is_string())
      throw Error(locator(path, line_no) + ": missing string field '" + opt.text_field + "'");
    doc.text = text->get<std::string>();
    if (auto id = obj.find(opt.id_field); id != obj.end() && !id->is_null()) {
      if (!id->is_string())
        throw Error(locator(path, line_no) + ": field '" + opt.id_field + "' must be a string");
      doc.id = id->get<std::string>();
    } else {
      doc.id = std::to_string(docs.size());
    }
    if (auto label = obj.find(opt.label_field); label != obj.end() && !label->is_null()) {
      if (!label->is_string())
        throw Error(locator(path, line_no) + ": field '" + opt.label_field + "' must be a string");
      doc.label = label->get<std::string>();
    }
    docs.push_back(std::move(doc));
  }
  if (in.bad()) throw Error("read failed: " + path.string());
  return docs;
}

std::vector<RawDocument> load_csv(const fs::path& path, const LoadOptions& opt) {
  const auto table = read_csv(path);
  const auto text_col = table.column(opt.text_field);
  if (!text_col) throw Error(path.string() + ": text column '" + opt.text_field + "' not in header");
  const auto id_col = table.column(opt.id_field);
  const auto label_col = table.column(opt.label_field);

  std::vector<RawDocument> docs;
  docs.reserve(table.rows.size());
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& fields = table.rows[r].fields;
    RawDocument doc;
    doc.text = fields[*text_col];
    doc.id = id_col ? fields[*id_col] : std::to_string(r);
    if (label_col && !fields[*label_col].empty()) doc.label = fields[*label_col];
    docs.push_back(std::move(doc));
  }
  return docs;
}

std::vector<RawDocument> load_category_dirs(const fs::path& root) {
  if (!fs::is_directory(root)) throw Error(root.string() + ": not a directory");
  std::vector<fs::path> categories;
  for (const auto& entry : fs::directory_iterator(root))
    if (entry.is_directory()) categories.push_back(entry.path());
  std::sort(categories.begin(), categories.end());

  std::vector<RawDocument> docs;
  for (const auto& dir : categories) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir))
      if (entry.is_regular_file()) files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    const std::string label = dir.filename().string();
    for (const auto& file : files) {
      RawDocument doc;
      doc.id = label + "/" + file.filename().string();
      doc.text = read_file(file);
      doc.label = label;
      docs.push_back(std::move(doc));
    }
  }
  return docs;
}

bool is_word_byte(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c >= 0x80;
}

}  // namespace

std::size_t TokenizedDocument::length() const noexcept {
  std::size_t n = 0;
  for (const auto& [term, count] : terms) n += count;
  return n;
}

Corpus Corpus::from_documents(std::vector<TokenizedDocument> docs) {
  Corpus corpus;
  std::unordered_set<std::string> ids;
  std::set<std::string> labels;
  for (const auto& d : docs) {
    if (d.id.empty()) throw Error("document with empty id");
    if (!ids.insert(d.id).second) throw Error("duplicate document id '" + d.id + "'");
    if (d.label) labels.insert(*d.label);
  }
  corpus.documents = std::move(docs);
  corpus.label_names.assign(labels.begin(), labels.end());
  return corpus;
}

CorpusFormat parse_corpus_format(std::string_view name) {
  if (name == "jsonl") return CorpusFormat::jsonl;
  if (name == "category-dirs" || name == "dirs") return CorpusFormat::category_dirs;
  if (name == "csv") return CorpusFormat::csv;
  throw Error("unknown corpus format '" + std::string(name) + "' (expected jsonl, category-dirs or csv)");
}

std::string_view to_string(CorpusFormat format) {
  switch (format) {
    case CorpusFormat::jsonl:
      return "jsonl";
    case CorpusFormat::category_dirs:
      return "category-dirs";
    case CorpusFormat::csv:
      return "csv";
  }
  return "jsonl";
}

std::vector<RawDocument> load_corpus(const fs::path& path, CorpusFormat format, const LoadOptions& options) {
  if (!fs::exists(path)) throw Error(path.string() + ": no such file or directory");
  std::vector<RawDocument> docs;
  switch (format) {
    case CorpusFormat::jsonl:
      docs = load_jsonl(path, options);
      break;
    case CorpusFormat::csv:
      docs = load_csv(path, options);
      break;
    case CorpusFormat::category_dirs:
      docs = load_category_dirs(path);
      break;
  }
  check_unique_ids(docs, path);
  return docs;
}

void write_jsonl(const fs::path& path, std::span<const RawDocument> docs) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  for (const auto& d : docs) {
    json obj = json::object();
    obj["id"] = d.id;
    obj["text"] = d.text;
    if (d.label) obj["label"] = *d.label;
    out << obj.dump() << '\n';
  }
  if (!out) throw Error("write failed: " + path.string());
}

const StopSet& default_stop_set() {
  static const StopSet words = {"an",   "and",  "are", "as",   "at",   "be",  "but",   "by",
                                "for",  "from", "has", "have", "he",   "in",  "is",    "it",
                                "its",  "not",  "of",  "on",   "or",   "that", "the",  "this",
                                "to",   "was",  "we",  "were", "which", "will", "with", "you"};
  return words;
}

StopSet load_stop_set(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open stop list " + path.string());
  StopSet words;
  std::string line;
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    auto last = line.find_last_not_of(" \t\r");
    std::string word = line.substr(first, last - first + 1);
    std::transform(word.begin(), word.end(), word.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    words.insert(std::move(word));
  }
  return words;
}

TokenizedDocument tokenize(const RawDocument& doc, const StopSet& stop_set) {
  TokenizedDocument out{doc.id, {}, doc.label};
  std::string token;
  auto flush = [&] {
    if (token.size() >= 2 && !stop_set.contains(token)) ++out.terms[token];
    token.clear();
  };
  for (unsigned char c : doc.text) {
    if (is_word_byte(c)) {
      token.push_back(c < 0x80 ? static_cast<char>(std::tolower(c)) : static_cast<char>(c));
    } else {
      flush();
    }
  }
  flush();
  return out;
}

Corpus tokenize_all(std::span<const RawDocument> docs, const StopSet& stop_set) {
  std::vector<TokenizedDocument> out;
  out.reserve(docs.size());
  for (const auto& d : docs) out.push_back(tokenize(d, stop_set));
  return Corpus::from_documents(std::move(out));
}

Corpus sample_per_category(const Corpus& corpus, std::size_t n, std::uint64_t seed) {
  std::unordered_map<std::string, std::vector<std::size_t>> members;
  for (std::size_t i = 0; i < corpus.documents.size(); ++i)
    if (const auto& label = corpus.documents[i].label) members[*label].push_back(i);

  Rng rng = make_rng({seed});
  std::vector<std::size_t> chosen;
  for (const auto& label : corpus.label_names) {
    auto& pool = members[label];
    if (pool.size() < n)
      throw Error("category '" + label + "' has " + std::to_string(pool.size()) +
                  " documents, fewer than the " + std::to_string(n) + " requested");
    // Partial Fisher-Yates: the first n slots become the sample.
    for (std::size_t i = 0; i < n; ++i) {
      const auto j = i + static_cast<std::size_t>(uniform_index(rng, pool.size() - i));
      std::swap(pool[i], pool[j]);
    }
    chosen.insert(chosen.end(), pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(n));
  }
  std::sort(chosen.begin(), chosen.end());

  Corpus out;
  out.label_names = corpus.label_names;
  out.documents.reserve(chosen.size());
  for (auto i : chosen) out.documents.push_back(corpus.documents[i]);
  return out;
}

}  // namespace esq
