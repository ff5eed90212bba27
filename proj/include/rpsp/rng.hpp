#pragma once

#include <cstdint>
#include <random>

namespace rpsp {

// All randomness in the project flows through this wrapper. mt19937_64 has
// a standard-mandated output sequence and the range reduction below is done
// by hand, so a seed produces the same stream on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next() { return gen_(); }

  // uniform in [0, bound); bound >= 1
  std::uint64_t below(std::uint64_t bound) {
    // rejection sampling on the top of the range to avoid modulo bias
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t v = gen_();
    while (v >= limit) v = gen_();
    return v % bound;
  }

  // uniform in [lo, hi], inclusive
  int range(int lo, int hi) {
    return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  bool chance(double p) {
    return (next() >> 11) * 0x1.0p-53 < p;
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace rpsp
