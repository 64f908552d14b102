#pragma once

// Portable seeded sampling helpers. The standard distributions are
// implementation-defined, so reports would differ between standard
// libraries; these are fully specified on top of mt19937_64.

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace esq {

using Rng = std::mt19937_64;

/// Seeds an engine from a list of integers (run seed, stream id, ...).
inline Rng make_rng(std::initializer_list<std::uint64_t> keys) {
  std::vector<std::uint32_t> words;
  for (auto k : keys) {
    words.push_back(static_cast<std::uint32_t>(k));
    words.push_back(static_cast<std::uint32_t>(k >> 32));
  }
  std::seed_seq s(words.begin(), words.end());
  return Rng(s);
}

/// Uniform integer in [0, n); n must be > 0. Rejects the low 2^64 mod n
/// draws so every residue is equally likely.
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t n) {
  const std::uint64_t threshold = (0 - n) % n;
  std::uint64_t x = rng();
  while (x < threshold) x = rng();
  return x % n;
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform_unit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline bool bernoulli(Rng& rng, double p) { return uniform_unit(rng) < p; }

}  // namespace esq
