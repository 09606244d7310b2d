#ifndef PRSIM_RNG_HPP
#define PRSIM_RNG_HPP

#include <cstdint>
#include <limits>
#include <random>

namespace prsim {

/// Identifier recorded in manifests. Results are only comparable between
/// builds that report the same id.
inline constexpr const char* kRngAlgorithmId = "mt19937_64+splitmix64-substreams/1";

/// SplitMix64 finalizer; used both for seed mixing and substream derivation.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d649bb133111ebULL;
  return x ^ (x >> 31);
}

/// Deterministic key for the per-(run seed, role, round) substream.
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint32_t role_tag,
                                    std::uint64_t round) {
  std::uint64_t k = splitmix64(seed);
  k = splitmix64(k ^ (0x524f4c45ULL + role_tag));
  k = splitmix64(k ^ round);
  return k;
}

/// mt19937_64 stream with hand-rolled draw helpers so that the produced
/// sequence does not depend on the standard library's distribution
/// implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform double in [0,1), 53 bits.
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, n), n >= 1, by rejection.
  std::uint64_t next_below(std::uint64_t n) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() / n * n;
    std::uint64_t x = next_u64();
    while (x >= limit) x = next_u64();
    return x % n;
  }

  bool bernoulli(double p) { return next_unit() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace prsim

#endif
