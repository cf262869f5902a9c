#pragma once

#include <cstdint>
#include <random>

namespace slicerl {

using Rng = std::mt19937_64;

// SplitMix64 step, used to derive independent seeds from a base seed.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Seed for logical stream `stream` of run seed `base`. Streams with the same
// base never collide for distinct stream ids: the final step is a bijection
// of hash(base) + stream.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  std::uint64_t s = base;
  std::uint64_t a = splitmix64(s);
  s = a + stream;
  return splitmix64(s);
}

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

}  // namespace slicerl
