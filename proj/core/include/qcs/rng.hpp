#pragma once

#include <cstdint>

namespace qcs {

// Counter-based generator (Philox-4x32, 10 rounds). A generator is a pure
// function of (seed, stream, position), so simulations are reproducible to
// the bit on any platform and independent substreams are free: give each
// logical source of randomness its own stream id.
class PhiloxStream {
 public:
  PhiloxStream(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next_u64();

  // Uniform on the open interval (0,1): (x >> 11 + 0.5) * 2^-53; never
  // returns 0 or 1, so inverse-CDF transforms are safe.
  double next_uniform();

  // Standard normal via the inverse CDF (deterministic polynomial evaluation,
  // no libm dependence beyond sqrt/log).
  double next_normal();

 private:
  void refill();

  std::uint32_t key_[2];
  std::uint32_t counter_[4];
  std::uint64_t buffer_[2];
  int available_ = 0;
};

// Inverse standard normal CDF, accurate to ~1e-15 over (0,1).
// Rational minimax approximation (Wichura's PPND16 / algorithm AS 241).
double inverse_normal_cdf(double p);

// Standard normal CDF via erfc.
double normal_cdf(double x);

}  // namespace qcs
