#pragma once

#include <array>
#include <cstdint>
#include <utility>

namespace tailcens {

// Philox4x32 with 10 rounds. Counter-based: the i-th block of a stream is a
// pure function of (key, counter), so any draw can be produced at any time on
// any thread without shared state.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

// Stateless 64-bit hash combine (splitmix64 finalizer over both words).
// Used to derive per-replication seeds from (master_seed, replication index).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) noexcept;

// Counter-addressable uniform and Gaussian source on top of Philox. A stream
// is identified by (seed, stream); block i never depends on block j.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0) noexcept
      : key_{static_cast<std::uint32_t>(seed),
             static_cast<std::uint32_t>(seed >> 32)},
        stream_(stream) {}

  // Two independent uniforms in the open interval (0,1) from block i.
  std::pair<double, double> uniform_pair(std::uint64_t i) const noexcept;

  // First uniform of block i.
  double uniform(std::uint64_t i) const noexcept;

  // Standard normal via quantile inversion of uniform(i).
  double normal(std::uint64_t i) const;

 private:
  std::array<std::uint32_t, 2> key_;
  std::uint64_t stream_;
};

}  // namespace tailcens
