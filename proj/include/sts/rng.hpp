#pragma once

#include <cstdint>

namespace sts {

/// Fixed linear-congruential generator; reruns with the same seed are
/// bit-identical on every platform.
struct Lcg {
  uint64_t state;

  explicit Lcg(uint64_t seed) : state(seed) {}

  uint64_t next() {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    return state >> 16;
  }
  /// uniform in [0, m)
  uint64_t below(uint64_t m) { return next() % m; }
};

constexpr uint64_t kDefaultSeed = 0x5753u;  // default verification seed

}  // namespace sts
