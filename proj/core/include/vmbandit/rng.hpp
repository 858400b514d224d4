#pragma once

#include <cstdint>
#include <random>

namespace vmbandit {

// splitmix64 finalizer; used to derive stream seeds from counters.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

enum class StreamLane : std::uint64_t {
  environment = 0x76,  // reward / anomaly-score draws
  policy = 0x70,       // exploration and posterior-sampling draws
};

// Counter-based stream derivation. The environment lane depends only on
// (base_seed, replication), so every policy compared at replication r sees
// the same environment stream (common random numbers). The policy lane
// additionally mixes in the policy's index so exploration noise never
// perturbs environment outcomes.
constexpr std::uint64_t derive_stream_seed(std::uint64_t base_seed,
                                           std::uint64_t replication,
                                           StreamLane lane,
                                           std::uint64_t policy_index = 0) noexcept {
  std::uint64_t h = mix64(base_seed + 0x9E3779B97F4A7C15ull);
  h = mix64(h ^ replication);
  h = mix64(h ^ static_cast<std::uint64_t>(lane));
  if (lane == StreamLane::policy) h = mix64(h ^ policy_index);
  return h;
}

// Seeded random stream. All variate transforms are implemented here as fixed
// functions of the underlying mt19937_64 output, so sequences are
// reproducible bit-for-bit across standard-library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Unbiased uniform on [0, n); mask-and-reject.
  std::uint64_t uniform_below(std::uint64_t n);

  bool bernoulli(double p) { return uniform01() < p; }

  // Box-Muller; consumes exactly two uniforms per draw.
  double normal(double mean, double stddev);

  // Gamma(shape, 1) via Marsaglia-Tsang, with the shape<1 boost step.
  double gamma(double shape);

  double beta(double a, double b);

 private:
  std::mt19937_64 engine_;
};

}  // namespace vmbandit
