#pragma once

#include "latbp/types.hpp"

#include <cstdint>
#include <random>

namespace latbp {

/// splitmix64 step; used to derive independent substream seeds so that
/// per-task generators are reproducible regardless of scheduling.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Deterministic substream: generator for task `index` under `root` seed.
inline std::mt19937_64 substream(std::uint64_t root, std::uint64_t index) {
  std::uint64_t s = root ^ (0x6a09e667f3bcc909ULL + index * 0x9e3779b97f4a7c15ULL);
  std::uint64_t a = splitmix64(s);
  std::uint64_t b = splitmix64(s);
  std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                    static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
  return std::mt19937_64(seq);
}

inline Vector random_vector(std::mt19937_64& gen, Index n, Scalar lo = -1.0, Scalar hi = 1.0) {
  std::uniform_real_distribution<Scalar> dist(lo, hi);
  Vector v(n);
  for (Index i = 0; i < n; ++i) v[i] = dist(gen);
  return v;
}

inline Matrix random_matrix(std::mt19937_64& gen, Index n, Scalar lo = -1.0, Scalar hi = 1.0) {
  std::uniform_real_distribution<Scalar> dist(lo, hi);
  Matrix m(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) m(i, j) = dist(gen);
  return m;
}

}  // namespace latbp
