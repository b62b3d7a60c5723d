#pragma once

#include <cstdint>
#include <random>

namespace rmt {

// SplitMix64 finalizer (Steele, Lea & Flood 2014; public domain reference
// implementation). Bijective avalanche on 64 bits.
constexpr std::uint64_t splitmix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Replicate seed derivation. Replicate `index` of logical stream `stream`
// under a master seed gets
//
//   splitmix64( splitmix64(master ^ splitmix64(stream)) + index * GAMMA )
//
// with GAMMA the SplitMix64 golden-ratio increment. This is the canonical
// SplitMix64 sequence seeded per (master, stream), so results depend only on
// (master, stream, index) and never on worker count or scheduling.
//
// The mixing function is part of the report format: changing it changes
// every seeded result.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream,
                                    std::uint64_t index) noexcept {
  const std::uint64_t base = splitmix64(master ^ splitmix64(stream));
  return splitmix64(base + index * 0x9e3779b97f4a7c15ULL);
}

inline std::mt19937_64 make_engine(std::uint64_t seed) {
  return std::mt19937_64(seed);
}

}  // namespace rmt
