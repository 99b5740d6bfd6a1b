#pragma once
// SplitMix64: tiny splittable PRNG (Steele/Lea/Flood constants). Chosen for
// bit-for-bit reproducibility across platforms; std:: distributions are
// implementation-defined and cannot give that.

#include <cstdint>

namespace quota {

// Stateless output scramble of SplitMix64, usable as a 64-bit mixer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  constexpr std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    return mix64(z);
  }

  // Uniform in [0, 1), 53 random bits.
  double next_double() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, bound); bound must be > 0. Modulo bias is
  // < bound/2^64, negligible for the small bounds used here.
  std::uint64_t next_below(std::uint64_t bound) noexcept { return next() % bound; }

 private:
  std::uint64_t state_;
};

// Seed of the index-th derived substream of a master seed. Pure function, so
// substreams can be assigned to workers in any order without changing the
// stream contents.
constexpr std::uint64_t substream_seed(std::uint64_t master, std::uint64_t index) noexcept {
  return mix64(master ^ mix64(index + 0x9E3779B97F4A7C15ULL));
}

}  // namespace quota
