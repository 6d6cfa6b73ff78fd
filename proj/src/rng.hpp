#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>

namespace gb {

// splitmix64 finalizer, used for seed derivation.
inline uint64_t mix64(uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Seedable generator with labeled sub-streams, so that the policy, the
// environment and graph realizations never share draws. All distributions
// are derived from raw 64-bit outputs of std::mt19937_64, whose sequence is
// fully specified by the standard; outputs are therefore reproducible
// byte-for-byte across platforms.
class Rng {
 public:
  explicit Rng(uint64_t seed) : seed_(seed), engine_(mix64(seed)) {}

  uint64_t seed() const { return seed_; }

  Rng split(std::string_view label) const {
    uint64_t h = 1469598103934665603ULL;  // FNV-1a over the label
    for (char c : label) {
      h ^= static_cast<unsigned char>(c);
      h *= 1099511628211ULL;
    }
    return Rng(mix64(seed_ ^ h));
  }

  Rng split(uint64_t salt) const { return Rng(mix64(seed_ ^ mix64(salt))); }

  uint64_t next_u64() { return engine_(); }

  // Uniform in [0,1) with 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform() < p; }

  // Uniform integer in [lo, hi].
  int uniform_int(int lo, int hi) {
    const uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(next_u64() % span);
  }

  // Index drawn from an unnormalized weight vector by CDF inversion.
  int sample_discrete(std::span<const double> weights) {
    double total = 0.0;
    for (double w : weights) total += w;
    double r = uniform() * total;
    for (size_t i = 0; i + 1 < weights.size(); ++i) {
      r -= weights[i];
      if (r < 0.0) return static_cast<int>(i);
    }
    return static_cast<int>(weights.size()) - 1;
  }

 private:
  uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace gb
