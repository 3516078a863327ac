#pragma once

#include <cassert>
#include <cstdint>
#include <utility>
#include <vector>

namespace natdist {

// Default seed used by the CLI and by convenience constructors.
inline constexpr std::uint64_t kDefaultSeed = 42;

// Stream purposes. Every consumer of randomness derives its own substream
// from (seed, purpose, index) so that results never depend on execution
// order, worker count, or unrelated draws.
inline constexpr std::uint64_t kStreamSampleIndices = 1;  // without-replacement rule sampling
inline constexpr std::uint64_t kStreamStopSteps = 2;      // per-machine random stop steps
inline constexpr std::uint64_t kStreamMonteCarlo = 3;     // permutation-test batches
inline constexpr std::uint64_t kStreamReportRow = 4;      // per-n significance rows

// Deterministic 64-bit generator (splitmix64). Chosen over <random> engines
// plus distributions because the standard leaves distribution algorithms
// implementation-defined; this recurrence and the draws below are fixed on
// every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  // Substream for (seed, purpose, index). Two finalizer rounds decorrelate
  // the inputs; the exact formula is frozen (golden values in the tests).
  static Rng substream(std::uint64_t seed, std::uint64_t purpose, std::uint64_t index) {
    std::uint64_t s = mix(seed + 0x9e3779b97f4a7c15ull * purpose);
    s = mix(s ^ (index + 0xd1b54a32d192ed03ull));
    return Rng(s);
  }

  // Next 64 random bits.
  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ull;
    return mix(state_);
  }

  // Uniform draw in [0, bound), unbiased via bottom-of-range rejection.
  std::uint64_t below(std::uint64_t bound) {
    assert(bound >= 1);
    const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
    for (;;) {
      const std::uint64_t x = next();
      if (x >= threshold) return x % bound;
    }
  }

  // Fisher-Yates shuffle driven by below().
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[static_cast<std::size_t>(below(i))]);
    }
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

}  // namespace natdist
