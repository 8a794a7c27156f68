#pragma once

#include <cstdint>
#include <random>

namespace noisysort {

using Rng = std::mt19937_64;

// splitmix64 finalizer; used to derive independent per-stream seeds.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// One master seed fans out to per-replica streams keyed by a counter.
inline Rng make_stream_rng(std::uint64_t master_seed, std::uint64_t stream_id) {
  return Rng(mix64(master_seed ^ mix64(stream_id)));
}

// Unbiased draw from {0, ..., n-1} (Lemire rejection). n >= 1.
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t n) {
  unsigned __int128 m = static_cast<unsigned __int128>(rng()) * n;
  auto lo = static_cast<std::uint64_t>(m);
  if (lo < n) {
    const std::uint64_t t = (0 - n) % n;
    while (lo < t) {
      m = static_cast<unsigned __int128>(rng()) * n;
      lo = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

// Uniform double in [0, 1), 53 random mantissa bits.
inline double uniform_unit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace noisysort
