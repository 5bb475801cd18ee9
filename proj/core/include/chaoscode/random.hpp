#pragma once

#include <cstdint>
#include <random>

namespace chaoscode {

/// SplitMix64 finalizer. Used to derive independent, decomposition-invariant
/// stream seeds from (seed, index) pairs.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Seed for the `index`-th independent stream under a caller seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept;

/// Deterministic uniform source. The engine output sequence of std::mt19937_64
/// is fixed by the standard; the conversion to double is done here so results
/// do not depend on the standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random mantissa bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  std::uint8_t bit() { return static_cast<std::uint8_t>(engine_() >> 63); }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

/// Bounds used whenever a "random initial condition" is requested.
inline constexpr double kRandomX0Lo = 0.01;
inline constexpr double kRandomX0Hi = 0.99;

/// x0 drawn uniformly from [0.01, 0.99].
double random_x0(Rng& rng);

}  // namespace chaoscode
