#pragma once

// Shared fixtures: the six-document toy corpus and small random corpora.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <unistd.h>

#include <esq/corpus.hpp>
#include <esq/index.hpp>
#include <esq/random.hpp>

namespace esq::test {

inline TokenizedDocument doc(std::string id, std::map<std::string, std::uint32_t> terms,
                             std::optional<std::string> label = std::nullopt) {
  TokenizedDocument d;
  d.id = std::move(id);
  for (auto& [t, c] : terms) d.terms.emplace(t, c);
  d.label = std::move(label);
  return d;
}

/// d1..d6 are ordinals 0..5. Labels X = {d1,d2,d3}, Y = {d4,d5,d6}.
inline Corpus toy_corpus() {
  return Corpus::from_documents({
      doc("d1", {{"space", 1}, {"orbit", 1}, {"nasa", 1}}, "X"),
      doc("d2", {{"space", 1}, {"nasa", 1}}, "X"),
      doc("d3", {{"orbit", 1}, {"moon", 1}}, "X"),
      doc("d4", {{"hockey", 1}, {"game", 1}}, "Y"),
      doc("d5", {{"game", 1}, {"team", 1}, {"hockey", 1}}, "Y"),
      doc("d6", {{"team", 1}, {"game", 1}}, "Y"),
  });
}

inline InvertedIndex toy_index() { return InvertedIndex::build(toy_corpus()); }

/// Random corpus over terms "w0".."w{vocab-1}"; documents may be empty.
inline Corpus random_corpus(Rng& rng, std::size_t docs, std::size_t vocab, std::size_t max_terms = 6,
                            std::size_t labels = 3) {
  std::vector<TokenizedDocument> out;
  for (std::size_t i = 0; i < docs; ++i) {
    TokenizedDocument d;
    d.id = "doc" + std::to_string(i);
    const auto n = uniform_index(rng, max_terms + 1);
    for (std::size_t t = 0; t < n; ++t)
      d.terms["w" + std::to_string(uniform_index(rng, vocab))] += 1 + static_cast<std::uint32_t>(uniform_index(rng, 3));
    d.label = "L" + std::to_string(uniform_index(rng, labels));
    out.push_back(std::move(d));
  }
  return Corpus::from_documents(std::move(out));
}

/// Scratch directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("esq-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

}  // namespace esq::test
