#pragma once

#include <cstdint>
#include <random>

namespace iqoap {

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Counter-based subseed: independent of evaluation order, so runs and trials
/// can be scheduled in any order without changing results.
constexpr std::uint64_t derive_seed(std::uint64_t root, std::uint64_t counter) {
  return mix64(mix64(root) ^ mix64(counter + 0x632be59bd9b4e019ULL));
}

inline std::mt19937_64 make_rng(std::uint64_t root, std::uint64_t counter) {
  return std::mt19937_64(derive_seed(root, counter));
}

/// Uniform double in [0, 1) from the top 53 bits; identical on every
/// standard library, unlike std::uniform_real_distribution.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace iqoap
