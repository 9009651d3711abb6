#ifndef COOPGROW_RANDOM_HPP
#define COOPGROW_RANDOM_HPP

#include <cstdint>
#include <random>
#include <string_view>

namespace coopgrow {

// The engine is fully specified by the standard, so streams are reproducible
// across platforms. The std:: distributions are not, hence the helpers below.
using Rng = std::mt19937_64;

/// Uniform double in [0, 1) built from the top 53 bits of one engine draw.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Unbiased uniform integer in [0, bound). bound must be > 0.
/// Lemire's multiply-shift with rejection of the biased low zone.
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t bound) {
  std::uint64_t x = rng();
  __uint128_t m = static_cast<__uint128_t>(x) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      x = rng();
      m = static_cast<__uint128_t>(x) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// 64-bit FNV-1a of an experiment tag such as "transition" or "fixation/ni=100".
constexpr std::uint64_t tag_hash(std::string_view tag) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : tag) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Seed of trial `index` in the ensemble identified by (master, tag):
///   mix64(mix64(mix64(master) ^ tag_hash(tag)) ^ index)
/// Adding trials never changes the seeds of existing ones.
constexpr std::uint64_t trial_seed(std::uint64_t master, std::string_view tag, std::uint64_t index) {
  return mix64(mix64(mix64(master) ^ tag_hash(tag)) ^ index);
}

}  // namespace coopgrow

#endif  // COOPGROW_RANDOM_HPP
