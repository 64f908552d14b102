#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace esq {

using DocId = std::uint32_t;

/// Fixed-universe bit set over document ordinals [0, universe).
///
/// Every set taking part in a binary operation must share the same universe;
/// this is the caller's responsibility (all sets handed out by one index do).
class DocSet {
 public:
  DocSet() = default;
  explicit DocSet(std::size_t universe);

  std::size_t universe() const noexcept { return universe_; }

  void insert(DocId doc) noexcept {
    blocks_[doc >> 6] |= std::uint64_t{1} << (doc & 63);
  }
  void erase(DocId doc) noexcept {
    blocks_[doc >> 6] &= ~(std::uint64_t{1} << (doc & 63));
  }
  bool contains(DocId doc) const noexcept {
    return (blocks_[doc >> 6] >> (doc & 63)) & 1U;
  }

  std::size_t count() const noexcept;
  bool empty() const noexcept;
  void clear() noexcept;

  DocSet& operator|=(const DocSet& other) noexcept;
  DocSet& operator&=(const DocSet& other) noexcept;
  /// this := this \ other
  DocSet& subtract(const DocSet& other) noexcept;

  friend DocSet operator|(DocSet a, const DocSet& b) noexcept { return a |= b; }
  friend DocSet operator&(DocSet a, const DocSet& b) noexcept { return a &= b; }
  friend bool operator==(const DocSet&, const DocSet&) = default;

  bool is_subset_of(const DocSet& other) const noexcept;

  /// |a ∩ b| without materialising the intersection.
  static std::size_t intersection_count(const DocSet& a, const DocSet& b) noexcept;

  std::vector<DocId> to_vector() const;

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
      std::uint64_t bits = blocks_[b];
      while (bits != 0) {
        const int bit = std::countr_zero(bits);
        f(static_cast<DocId>(b * 64 + static_cast<std::size_t>(bit)));
        bits &= bits - 1;
      }
    }
  }

  std::span<const std::uint64_t> blocks() const noexcept { return blocks_; }
  std::span<std::uint64_t> blocks() noexcept { return blocks_; }

 private:
  std::size_t universe_ = 0;
  std::vector<std::uint64_t> blocks_;
};

}  // namespace esq
