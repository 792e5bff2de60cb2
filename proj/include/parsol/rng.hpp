#pragma once

#include <cstdint>

namespace parsol {

/// Counter-based splittable generator (splitmix64).  Every draw is a pure
/// function of (seed, stream, counter), so generated instances are
/// reproducible across platforms and thread counts.  The generator name
/// "splitmix64" is recorded in the headers of generated files.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed, std::uint64_t stream = 0)
      : base_(mix(seed + 0x9E3779B97F4A7C15ull * (stream + 1))) {}

  std::uint64_t next_u64() { return mix(base_ + 0x9E3779B97F4A7C15ull * ++counter_); }

  /// Uniform in (-1, 1).
  double next_unit() {
    const std::uint64_t u = next_u64() >> 11;  // 53 bits
    return 2.0 * (double(u) / 9007199254740992.0) - 1.0 + 1.1102230246251565e-16;
  }

  static const char* name() { return "splitmix64"; }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  std::uint64_t base_;
  std::uint64_t counter_ = 0;
};

}  // namespace parsol
