#ifndef UNITARY_RNG_HPP
#define UNITARY_RNG_HPP

#include <cstdint>

#include "unitary/numeric.hpp"

namespace unitary {

/// Counter-based generator: the stream is a pure function of (seed, stream,
/// counter), so sample i of a run is identical no matter how work is split
/// across threads. The mixer is the splitmix64 finalizer applied to a
/// Weyl-sequenced counter.
class CounterRng {
 public:
  CounterRng(uint64_t seed, uint64_t stream)
      : key_(mix(seed ^ mix(stream + 0x1b873593u))), ctr_(0) {}

  uint64_t next_u64() {
    uint64_t z = key_ + (ctr_++) * 0x9e3779b97f4a7c15ull;
    return mix(z);
  }

  /// Uniform in [0, bound) by rejection from the top 2^64 range.
  uint64_t below(uint64_t bound) {
    if (bound == 0) throw GuardError("CounterRng::below: bound must be positive");
    uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    uint64_t v;
    do {
      v = next_u64();
    } while (v >= limit);
    return v % bound;
  }

  /// Uniform in [0, bound) for arbitrary-precision bound, by assembling
  /// 64-bit limbs and rejecting overshoot.
  Int below(const Int& bound) {
    if (bound <= 0) throw GuardError("CounterRng::below: bound must be positive");
    size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
    size_t words = (bits + 63) / 64;
    while (true) {
      Int v = 0;
      for (size_t i = 0; i < words; ++i) {
        v <<= 64;
        v += next_u64();
      }
      v >>= (words * 64 - bits);
      if (v < bound) return v;
    }
  }

 private:
  static uint64_t mix(uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  uint64_t key_;
  uint64_t ctr_;
};

}  // namespace unitary

#endif
