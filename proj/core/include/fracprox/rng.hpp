#pragma once

#include <cstdint>
#include <limits>

namespace fracprox {

// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

// Per-instance seed derivation used by the CLI: mix64(base ^ mix64(index + 1)).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

// Counter-based generator: the i-th output of stream (seed, stream_id) is
// mix64(key + (i + 1) * 0x9E3779B97F4A7C15) with key = mix64(seed ^ mix64(stream_id)).
// Outputs are addressable by counter, so streams never share state.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  CounterRng(std::uint64_t seed, std::uint64_t stream_id);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() { return at(counter_++); }
  result_type at(std::uint64_t counter) const;
  std::uint64_t counter() const { return counter_; }

  // Uniform on the open interval (0, 1) with 53 random bits.
  double uniform();
  // Standard normal via Box-Muller; the second variate is cached.
  double normal();
  // Uniform integer in [0, n) by multiply-shift rejection.
  std::uint64_t below(std::uint64_t n);

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

namespace stream {
inline constexpr std::uint64_t kMatrix = 1;
inline constexpr std::uint64_t kSupport = 2;
inline constexpr std::uint64_t kSignal = 3;
inline constexpr std::uint64_t kNoise = 4;
}  // namespace stream

}  // namespace fracprox
