#pragma once

#include <cstdint>

namespace bna {

// Small deterministic generator (xorshift*), stable across platforms so that
// every seeded report regenerates exactly.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ^ 0x9e3779b97f4a7c15ull) {
    if (state_ == 0) state_ = 0x9e3779b97f4a7c15ull;
  }

  std::uint64_t next() {
    state_ ^= state_ << 13;
    state_ ^= state_ >> 7;
    state_ ^= state_ << 17;
    return state_ * 0x2545f4914f6cdd1dull;
  }

  // uniform in [0, n), n >= 1
  int below(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }

  double unit() { return static_cast<double>(next() >> 11) / 9007199254740992.0; }

  bool chance(double p) { return unit() < p; }

 private:
  std::uint64_t state_;
};

}  // namespace bna
