#pragma once

#include <array>
#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

namespace microstyle {

// SplitMix64 (Steele, Lea, Flood). Used only to expand seeds.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t state) : state_(state) {}
  std::uint64_t Next();

 private:
  std::uint64_t state_;
};

// xoshiro256** 1.0 (Blackman, Vigna), state filled from SplitMix64(seed).
// The sampling layer only relies on Next() and UniformBelow(), whose exact
// bit streams are part of the dataset reproducibility contract.
class Xoshiro256 {
 public:
  explicit Xoshiro256(std::uint64_t seed);

  std::uint64_t Next();

  // Uniform integer in [0, bound) by rejection: draws below
  // (2^64 - bound) % bound are discarded, then the draw is reduced mod bound.
  std::uint64_t UniformBelow(std::uint64_t bound);

  // Uniform double in [0, 1) from the top 53 bits.
  double UniformUnit();

  // Fisher-Yates from the back: for i = n-1 .. 1, swap(i, UniformBelow(i+1)).
  template <typename T>
  void Shuffle(std::vector<T> &items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      auto j = static_cast<std::size_t>(UniformBelow(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::array<std::uint64_t, 4> s_;
};

// 64-bit FNV-1a.
std::uint64_t Fnv1a64(std::string_view bytes);

// Seed of the independent sampling stream for one combination key:
// SplitMix64(seed ^ Fnv1a64(key)).Next().
std::uint64_t StreamSeed(std::uint64_t seed, std::string_view key);

}  // namespace microstyle
