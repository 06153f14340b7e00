#pragma once

// Platform-independent seeded random streams. Standard distributions are
// implementation-defined, so conversions to reals are done here.

#include <cmath>
#include <cstdint>
#include <limits>
#include <string_view>
#include <type_traits>

namespace prank {

inline std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t fnv1a(std::string_view text, std::uint64_t hash = 0xcbf29ce484222325ULL) noexcept {
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

// xoshiro256** seeded through splitmix64.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) noexcept {
    std::uint64_t sm = seed;
    for (auto& s : state_) s = splitmix64(sm);
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform in [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

  // Uniform in (0, 1], safe for log().
  double uniform_open_low() noexcept { return 1.0 - uniform(); }

  double exponential() noexcept { return -std::log(uniform_open_low()); }

  std::uint64_t below(std::uint64_t bound) noexcept {
    // Lemire's multiply-shift; bias is negligible for the bounds used here.
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>((*this)()) * bound) >> 64);
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) noexcept { return (x << k) | (x >> (64 - k)); }

  std::uint64_t state_[4];
};

// Derives an independent seed from a base seed and a sequence of labels, so
// each computation cell gets the same stream regardless of scheduling.
template <typename... Parts>
std::uint64_t substream_seed(std::uint64_t seed, const Parts&... parts) {
  std::uint64_t hash = fnv1a(std::string_view{"prank"});
  auto mix = [&hash](const auto& part) {
    if constexpr (std::is_convertible_v<decltype(part), std::string_view>) {
      hash = fnv1a(std::string_view(part), hash);
    } else {
      std::uint64_t v = static_cast<std::uint64_t>(part);
      hash ^= splitmix64(v);
      hash *= 0x100000001b3ULL;
    }
    hash = fnv1a("\x1f", hash);
  };
  std::uint64_t s = seed;
  hash ^= splitmix64(s);
  (mix(parts), ...);
  return hash;
}

}  // namespace prank
