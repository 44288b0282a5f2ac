#pragma once

#include <cstdint>

#include "setforge/bytes.hpp"

namespace setforge {

// SplitMix64. Small enough to be obviously correct and identical on every
// platform, which is what makes the demos and the whole test suite
// reproducible from a single seed. Single-owner: never share one instance
// across threads.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Byte stream: each next_u64() emits 8 bytes most-significant first.
  Bytes next_bytes(std::size_t n) {
    Bytes out;
    out.reserve(n);
    while (out.size() < n) {
      std::uint64_t v = next_u64();
      for (int shift = 56; shift >= 0 && out.size() < n; shift -= 8) {
        out.push_back(static_cast<std::uint8_t>(v >> shift));
      }
    }
    return out;
  }

  // Uniform in [0, bound) by rejection on the minimal bit width.
  std::uint64_t next_below(std::uint64_t bound) {
    if (bound == 0) throw Error(ErrorCode::BadParameters, "zero bound");
    if (bound == 1) return 0;
    int bits = 0;
    for (std::uint64_t b = bound - 1; b != 0; b >>= 1) ++bits;
    const std::uint64_t mask =
        bits == 64 ? ~0ULL : ((std::uint64_t{1} << bits) - 1);
    for (;;) {
      const std::uint64_t v = next_u64() & mask;
      if (v < bound) return v;
    }
  }

 private:
  std::uint64_t state_;
};

}  // namespace setforge
