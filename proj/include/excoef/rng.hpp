#pragma once

#include <cmath>
#include <cstdint>

namespace excoef {

// Counter-based random numbers: each draw is a pure function of
// (seed, replicate, stream). There is no generator state, so replicate i of a
// simulation depends only on (seed, i) and serial and parallel execution
// produce bit-identical output. The word function is the SplitMix64 finalizer
// applied as a small keyed chain.

namespace detail {

inline constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace detail

/// 64 random bits for the cell (seed, replicate, stream).
inline constexpr std::uint64_t counter_word(std::uint64_t seed, std::uint64_t replicate,
                                            std::uint64_t stream) {
  return detail::mix64(detail::mix64(detail::mix64(seed) ^ replicate) ^ stream);
}

/// Uniform draw strictly inside (0,1): 53 significant bits, offset by half an ulp
/// so neither endpoint can occur.
inline double counter_uniform(std::uint64_t seed, std::uint64_t replicate, std::uint64_t stream) {
  const std::uint64_t bits = counter_word(seed, replicate, stream) >> 11;
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

/// Standard Frechet draw, P(V <= x) = exp(-1/x); always finite and positive.
inline double counter_frechet(std::uint64_t seed, std::uint64_t replicate, std::uint64_t stream) {
  return -1.0 / std::log(counter_uniform(seed, replicate, stream));
}

}  // namespace excoef
