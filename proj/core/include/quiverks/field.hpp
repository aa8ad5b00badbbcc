#pragma once

#include <compare>
#include <concepts>
#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "quiverks/error.hpp"

namespace qks {

namespace detail {
__extension__ typedef unsigned __int128 u128;
__extension__ typedef __int128 i128;
}  // namespace detail

enum class FieldKind { Prime, Rationals };

/// Serializable description of a base field. `modulus` is 0 for the rationals.
struct FieldSpec {
  FieldKind kind = FieldKind::Prime;
  std::uint64_t modulus = 0;

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

std::string to_string(const FieldSpec& spec);

/// Deterministic Miller-Rabin for all 64-bit inputs.
bool is_prime_u64(std::uint64_t n) noexcept;

/// The prime field F_p with p < 2^61. Elements are residues in [0, p).
class PrimeField {
 public:
  using value_type = std::uint64_t;

  static constexpr std::uint64_t kMaxModulus = std::uint64_t{1} << 61;

  explicit PrimeField(std::uint64_t p);

  std::uint64_t modulus() const noexcept { return p_; }
  std::uint64_t characteristic() const noexcept { return p_; }
  FieldSpec spec() const noexcept { return {FieldKind::Prime, p_}; }

  value_type zero() const noexcept { return 0; }
  value_type one() const noexcept { return 1; }
  bool is_zero(value_type a) const noexcept { return a == 0; }
  bool is_one(value_type a) const noexcept { return a == 1; }
  bool equal(value_type a, value_type b) const noexcept { return a == b; }

  value_type add(value_type a, value_type b) const noexcept {
    std::uint64_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  value_type sub(value_type a, value_type b) const noexcept { return a >= b ? a - b : a + p_ - b; }
  value_type neg(value_type a) const noexcept { return a == 0 ? 0 : p_ - a; }
  value_type mul(value_type a, value_type b) const noexcept {
    return static_cast<std::uint64_t>((static_cast<detail::u128>(a) * b) % p_);
  }
  value_type inv(value_type a) const;
  value_type div(value_type a, value_type b) const { return mul(a, inv(b)); }
  value_type pow(value_type a, std::uint64_t e) const noexcept;

  value_type from_int(std::int64_t v) const noexcept;
  value_type parse(std::string_view text) const;
  std::string to_string(value_type a) const { return std::to_string(a); }

  /// Total order on canonical values; used only for deterministic tie-breaking.
  std::strong_ordering compare(value_type a, value_type b) const noexcept { return a <=> b; }

  friend bool operator==(const PrimeField& a, const PrimeField& b) noexcept { return a.p_ == b.p_; }

 private:
  std::uint64_t p_;
};

/// The rationals, with GMP reduced fractions as elements.
class RationalField {
 public:
  using value_type = mpq_class;

  std::uint64_t characteristic() const noexcept { return 0; }
  FieldSpec spec() const noexcept { return {FieldKind::Rationals, 0}; }

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  bool is_zero(const value_type& a) const { return sgn(a) == 0; }
  bool is_one(const value_type& a) const { return a == 1; }
  bool equal(const value_type& a, const value_type& b) const { return a == b; }

  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type neg(const value_type& a) const { return -a; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type inv(const value_type& a) const;
  value_type div(const value_type& a, const value_type& b) const { return mul(a, inv(b)); }
  value_type pow(const value_type& a, std::uint64_t e) const;

  value_type from_int(std::int64_t v) const { return value_type(static_cast<long>(v)); }
  value_type parse(std::string_view text) const;
  std::string to_string(const value_type& a) const;

  std::strong_ordering compare(const value_type& a, const value_type& b) const {
    int c = cmp(a, b);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend bool operator==(const RationalField&, const RationalField&) noexcept { return true; }
};

template <class K>
concept ExactField = requires(const K& k, const typename K::value_type& a, std::string_view s) {
  { k.zero() } -> std::convertible_to<typename K::value_type>;
  { k.one() } -> std::convertible_to<typename K::value_type>;
  { k.add(a, a) } -> std::convertible_to<typename K::value_type>;
  { k.mul(a, a) } -> std::convertible_to<typename K::value_type>;
  { k.inv(a) } -> std::convertible_to<typename K::value_type>;
  { k.is_zero(a) } -> std::same_as<bool>;
  { k.parse(s) } -> std::convertible_to<typename K::value_type>;
  { k.to_string(a) } -> std::same_as<std::string>;
  { k.characteristic() } -> std::same_as<std::uint64_t>;
  { k.spec() } -> std::same_as<FieldSpec>;
};

template <class K>
inline constexpr bool is_prime_field_v = std::is_same_v<K, PrimeField>;

}  // namespace qks
