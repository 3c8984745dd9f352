#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace nakamoto {

using Rng = std::mt19937_64;

// splitmix64 finalizer; used to derive independent child seeds.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Seed of the k-th child stream of `seed`. Deterministic and order-free.
constexpr std::uint64_t split_seed(std::uint64_t seed, std::uint64_t k) {
  return mix64(mix64(seed) ^ mix64(k + 0x632be59bd9b4e019ULL));
}

inline Rng make_rng(std::uint64_t seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  return Rng(seq);
}

// Exponential waiting time with the given rate; +inf when rate is zero.
inline double draw_exponential(Rng& rng, double rate) {
  if (rate <= 0.0) return std::numeric_limits<double>::infinity();
  return std::exponential_distribution<double>(rate)(rng);
}

}  // namespace nakamoto
