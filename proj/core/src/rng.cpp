#include "tailcens/rng.hpp"

#include "tailcens/normal.hpp"

namespace tailcens {
namespace {

constexpr std::uint32_t kMult0 = 0xD2511F53u;
constexpr std::uint32_t kMult1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void round_once(std::array<std::uint32_t, 4>& c,
                       std::array<std::uint32_t, 2>& k) noexcept {
  const std::uint64_t r0 = static_cast<std::uint64_t>(kMult0) * c[0];
  const std::uint64_t r1 = static_cast<std::uint64_t>(kMult1) * c[2];
  c = {static_cast<std::uint32_t>(r1 >> 32) ^ c[1] ^ k[0],
       static_cast<std::uint32_t>(r1),
       static_cast<std::uint32_t>(r0 >> 32) ^ c[3] ^ k[1],
       static_cast<std::uint32_t>(r0)};
  k[0] += kWeyl0;
  k[1] += kWeyl1;
}

inline double to_unit(std::uint32_t lo, std::uint32_t hi) noexcept {
  const std::uint64_t bits = (static_cast<std::uint64_t>(hi) << 32) | lo;
  // 53 significant bits, shifted into the open interval.
  return static_cast<double>(bits >> 11) * 0x1.0p-53 + 0x1.0p-54;
}

inline std::uint64_t splitmix64(std::uint64_t z) noexcept {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key) {
  for (int r = 0; r < 10; ++r) round_once(counter, key);
  return counter;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  return splitmix64(splitmix64(seed) + index);
}

std::pair<double, double> CounterRng::uniform_pair(std::uint64_t i) const noexcept {
  const std::array<std::uint32_t, 4> ctr = {
      static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i >> 32),
      static_cast<std::uint32_t>(stream_),
      static_cast<std::uint32_t>(stream_ >> 32)};
  const auto out = philox4x32(ctr, key_);
  return {to_unit(out[0], out[1]), to_unit(out[2], out[3])};
}

double CounterRng::uniform(std::uint64_t i) const noexcept {
  return uniform_pair(i).first;
}

double CounterRng::normal(std::uint64_t i) const {
  return normal_quantile(uniform(i));
}

}  // namespace tailcens
