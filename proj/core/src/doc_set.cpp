#include "esq/doc_set.hpp"

namespace esq {

DocSet::DocSet(std::size_t universe)
    : universe_(universe), blocks_((universe + 63) / 64, 0) {}

std::size_t DocSet::count() const noexcept {
  std::size_t n = 0;
  for (auto b : blocks_) n += static_cast<std::size_t>(std::popcount(b));
  return n;
}

bool DocSet::empty() const noexcept {
  for (auto b : blocks_)
    if (b != 0) return false;
  return true;
}

void DocSet::clear() noexcept {
  for (auto& b : blocks_) b = 0;
}

DocSet& DocSet::operator|=(const DocSet& other) noexcept {
  for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] |= other.blocks_[i];
  return *this;
}

DocSet& DocSet::operator&=(const DocSet& other) noexcept {
  for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] &= other.blocks_[i];
  return *this;
}

DocSet& DocSet::subtract(const DocSet& other) noexcept {
  for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] &= ~other.blocks_[i];
  return *this;
}

bool DocSet::is_subset_of(const DocSet& other) const noexcept {
  for (std::size_t i = 0; i < blocks_.size(); ++i)
    if ((blocks_[i] & ~other.blocks_[i]) != 0) return false;
  return true;
}

std::size_t DocSet::intersection_count(const DocSet& a, const DocSet& b) noexcept {
  std::size_t n = 0;
  for (std::size_t i = 0; i < a.blocks_.size(); ++i)
    n += static_cast<std::size_t>(std::popcount(a.blocks_[i] & b.blocks_[i]));
  return n;
}

std::vector<DocId> DocSet::to_vector() const {
  std::vector<DocId> out;
  out.reserve(count());
  for_each([&](DocId d) { out.push_back(d); });
  return out;
}

}  // namespace esq
