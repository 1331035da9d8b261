#pragma once

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

namespace spiked {

/// 64-bit finalizer from SplitMix64.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// FNV-1a hash of a stream name.
std::uint64_t hash_name(std::string_view name) noexcept;

/// Derives an independent stream seed from a master seed, an ordered list of
/// integer keys (theta index, trial index, chunk index, ...) and a stream name.
///
///   h = splitmix64(master ^ 0x9e3779b97f4a7c15)
///   for each key k:  h = splitmix64(h ^ splitmix64(k + 0x632be59bd9b4e019))
///   h = splitmix64(h ^ fnv1a(name))
///
/// The mapping is part of the report format and must not change between
/// versions.
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> keys,
                          std::string_view stream) noexcept;

/// Seeded generator for one named stream. Never shared between threads.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double normal() { return normal_(engine_); }
  double uniform() { return uniform_(engine_); }  // [0, 1)
  std::uint64_t below(std::uint64_t bound) {
    return std::uniform_int_distribution<std::uint64_t>(0, bound - 1)(engine_);
  }
  bool coin(double p) { return uniform() < p; }
  /// N_C(0, 1): independent real and imaginary parts with variance 1/2.
  std::complex<double> complex_normal();

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

}  // namespace spiked
