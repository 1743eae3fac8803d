#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace pointfw {

// One Philox4x32-10 block.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter, std::array<std::uint32_t, 2> key);

// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
//
// A generator is identified by (seed, stream). The 64-bit seed is the key;
// the stream occupies the upper half of the 128-bit counter, so distinct
// streams never overlap and replication r of a Monte Carlo study can be
// reproduced in isolation by constructing Rng(seed, r).
class Rng {
 public:
  using result_type = std::uint32_t;

  Rng(std::uint64_t seed, std::uint64_t stream = 0);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  // Uniform on the open interval (0, 1); 53 random bits.
  double uniform();
  double normal();
  // Exp(1) by inversion.
  double exponential();

  std::uint64_t seed() const { return key_[0] | (std::uint64_t{key_[1]} << 32); }
  std::uint64_t stream() const { return counter_[2] | (std::uint64_t{counter_[3]} << 32); }

 private:
  void refill();

  std::array<std::uint32_t, 2> key_{};
  std::array<std::uint32_t, 4> counter_{};
  std::array<std::uint32_t, 4> block_{};
  int used_ = 4;
  bool has_spare_normal_ = false;
  double spare_normal_ = 0.0;
};

}  // namespace pointfw
