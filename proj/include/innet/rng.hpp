#pragma once

#include <cstdint>
#include <random>

namespace innet {

// splitmix64 finalizer; good avalanche, cheap.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Combines a base seed with up to four stream indices into one substream key.
// Sequential mixing makes the combination position-dependent, so
// (a=1, b=0) and (a=0, b=1) land in different streams.
inline std::uint64_t substream_key(std::uint64_t seed, std::uint64_t a,
                                   std::uint64_t b = 0, std::uint64_t c = 0,
                                   std::uint64_t d = 0) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ a);
  h = splitmix64(h ^ b);
  h = splitmix64(h ^ c);
  h = splitmix64(h ^ d);
  return h;
}

// A dedicated generator per (seed, indices) tuple. Draw order inside one
// substream is fixed by the caller; substreams are independent of each other,
// so candidate evaluation may run in any order (or in parallel) without
// changing the draws.
inline std::mt19937_64 substream(std::uint64_t seed, std::uint64_t a,
                                 std::uint64_t b = 0, std::uint64_t c = 0,
                                 std::uint64_t d = 0) {
  return std::mt19937_64(substream_key(seed, a, b, c, d));
}

}  // namespace innet
