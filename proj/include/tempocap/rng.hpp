#pragma once

#include <cstdint>
#include <random>

namespace tempocap {

/// Deterministic random source used by every sampling path.
///
/// The generator is the standard-specified mt19937_64 seeded with a single
/// 64-bit value, and all derived draws are defined here rather than through
/// std::*_distribution (whose outputs vary across standard libraries):
///   - next_u64(): one raw generator word.
///   - uniform01(): (next_u64() >> 11) * 2^-53, uniform on [0, 1).
///   - uniform_int(lo, hi): bounded rejection. span = hi - lo + 1; draw u64
///     words, rejecting values >= floor(2^64 / span) * span, then return
///     lo + u % span. Exactly uniform on {lo..hi}.
///   - uniform_real(lo, hi): lo + (hi - lo) * uniform01(), on [lo, hi).
/// Identical seeds therefore reproduce identical streams on every platform.
class DeterministicRng {
 public:
  explicit DeterministicRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi) {
    const std::uint64_t span = hi - lo + 1;  // hi >= lo; span 0 means 2^64
    if (span == 0) return next_u64();
    const std::uint64_t limit = (~std::uint64_t{0} / span) * span;
    std::uint64_t u;
    do {
      u = next_u64();
    } while (u >= limit);
    return lo + u % span;
  }

  double uniform_real(double lo, double hi) {
    return lo + (hi - lo) * uniform01();
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace tempocap
