#pragma once

#include <cstdint>

namespace k3 {

// Deterministic generator used by every sampler in the project; results must
// be reproducible from (seed, position) across platforms, so nothing from
// <random> is used.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  SplitMix64(std::uint64_t seed, std::uint64_t position)
      : state(seed ^ (0xd1b54a32d192ed03ULL * (position + 1))) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  std::uint64_t below(std::uint64_t n) { return next() % n; }
  /// Uniform on [lo, hi] inclusive.
  long long range(long long lo, long long hi) {
    return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }
};

}  // namespace k3
