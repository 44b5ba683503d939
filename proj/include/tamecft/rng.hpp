#pragma once

// Seeded 64-bit linear congruential generator for campaigns.
//
//   state' = state * 6364136223846793005 + 1442695040888963407   (mod 2^64)
//   next() = state' >> 11                                          (53 bits)
//   below(n) = next() % n
//
// Trial i of a campaign with seed S starts from
//   state = S ^ (i * 0x9E3779B97F4A7C15 + 0xD1B54A32D192ED03)
// and discards four outputs.

#include <cstdint>

namespace tamecft {

class Lcg64 {
 public:
  static constexpr std::uint64_t kMul = 6364136223846793005ULL;
  static constexpr std::uint64_t kInc = 1442695040888963407ULL;

  explicit Lcg64(std::uint64_t seed) : state_(seed) {}

  static Lcg64 for_trial(std::uint64_t seed, std::uint64_t trial) {
    Lcg64 r(seed ^ (trial * 0x9E3779B97F4A7C15ULL + 0xD1B54A32D192ED03ULL));
    for (int i = 0; i < 4; ++i) r.next();
    return r;
  }

  std::uint64_t next() {
    state_ = state_ * kMul + kInc;
    return state_ >> 11;
  }

  std::uint64_t below(std::uint64_t n) { return next() % n; }

  /// Uniform in [lo, hi].
  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

 private:
  std::uint64_t state_;
};

}  // namespace tamecft
