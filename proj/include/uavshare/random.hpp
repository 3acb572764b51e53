#pragma once

#include <cstdint>
#include <random>

namespace uavshare {

/// splitmix64 finalizer. Used to derive independent per-trial seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Seed of trial `trial` under `master_seed`: splitmix64(master ^ splitmix64(trial)).
constexpr std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t trial) {
  return splitmix64(master_seed ^ splitmix64(trial));
}

/// The only source of randomness in the library. std::mt19937_64 output is
/// fixed by the standard; doubles are formed from the top 53 bits so the
/// sequence is identical on every conforming platform (std distributions
/// are not).
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on [0, 1).
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace uavshare
