#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "quiverks/field.hpp"

namespace qks {

/// Derives an independent sub-seed for a named task. The mix is
/// splitmix64(seed ^ fnv1a64(task) ^ splitmix64(index)), which is stable
/// across platforms and standard libraries.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view task, std::uint64_t index = 0) noexcept;

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// The single pseudo-random generator used everywhere: std::mt19937_64 seeded
/// with one 64-bit value. Bounded draws use rejection sampling on the raw
/// 64-bit output so results never depend on a standard library's
/// distribution implementation.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, bound); bound must be positive.
  std::uint64_t uniform(std::uint64_t bound);

  /// Uniform integer in [lo, hi].
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

  bool coin() { return (next() >> 63) != 0; }

  Rng fork(std::string_view task, std::uint64_t index = 0) { return Rng(derive_seed(next(), task, index)); }

 private:
  std::mt19937_64 engine_;
};

/// Height bound for random rationals: numerator in [-H, H], denominator in [1, H].
inline constexpr std::int64_t kRationalHeight = 9;

inline PrimeField::value_type random_element(const PrimeField& field, Rng& rng) {
  return rng.uniform(field.modulus());
}

inline RationalField::value_type random_element(const RationalField&, Rng& rng) {
  std::int64_t num = rng.uniform_int(-kRationalHeight, kRationalHeight);
  std::int64_t den = rng.uniform_int(1, kRationalHeight);
  mpq_class q(static_cast<long>(num), static_cast<unsigned long>(den));
  q.canonicalize();
  return q;
}

}  // namespace qks
