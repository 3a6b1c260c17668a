// SPDX-License-Identifier: MIT
//
// Deterministic pseudorandom stream (splitmix64). Produces identical
// sequences for a given seed on any platform with IEEE-754 doubles, so
// seeded runs are reproducible bit for bit.
#pragma once

#include <cstdint>

namespace menukit {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform draw in [0, 1) built from the top 53 bits.
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Derives an independent stream from a base seed and a stream index.
  static SplitMix64 substream(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 mixer(seed ^ (0x9e3779b97f4a7c15ull * (index + 1)));
    return SplitMix64(mixer.next_u64());
  }

 private:
  std::uint64_t state_;
};

}  // namespace menukit
