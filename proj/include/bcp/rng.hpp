#pragma once

#include <cstdint>
#include <random>

namespace bcp {

/// Seeded 64-bit generator. Uniform variates are built from the raw 64-bit
/// output so the stream is identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, 1).
  double uniform_open() {
    double u;
    do {
      u = uniform();
    } while (u == 0.0);
    return u;
  }

  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

/// Counter-based seed derivation (splitmix64 finalizer over master, stream, index).
/// Results do not depend on the order in which replicas are scheduled.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index);

/// Poisson variate: sequential-search inversion for mean < 10,
/// transformed rejection with squeeze (PTRS) otherwise.
std::int64_t sample_poisson(double mean, Rng& rng);

}  // namespace bcp
