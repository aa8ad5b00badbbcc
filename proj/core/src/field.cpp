#include "quiverks/field.hpp"

#include <array>
#include <cctype>

namespace qks {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::NotPrime: return "NotPrime";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::UnsupportedField: return "UnsupportedField";
    case Errc::DanglingArrow: return "DanglingArrow";
    case Errc::DuplicateId: return "DuplicateId";
    case Errc::EmptyQuiver: return "EmptyQuiver";
    case Errc::InvalidPath: return "InvalidPath";
    case Errc::TwistedRealization: return "TwistedRealization";
    case Errc::IncoherentTable: return "IncoherentTable";
    case Errc::MismatchedContext: return "MismatchedContext";
    case Errc::NotIdempotent: return "NotIdempotent";
    case Errc::NotEndomorphism: return "NotEndomorphism";
    case Errc::SmallCharacteristic: return "SmallCharacteristic";
    case Errc::DivisionUncertain: return "DivisionUncertain";
    case Errc::NotIdempotentModJ: return "NotIdempotentModJ";
    case Errc::RelationViolation: return "RelationViolation";
    case Errc::NotNatural: return "NotNatural";
    case Errc::MismatchedM: return "MismatchedM";
    case Errc::SchemaError: return "SchemaError";
    case Errc::ShapeError: return "ShapeError";
    case Errc::PreconditionViolation: return "PreconditionViolation";
    case Errc::InvariantViolation: return "InvariantViolation";
  }
  return "Unknown";
}

std::string to_string(const FieldSpec& spec) {
  if (spec.kind == FieldKind::Rationals) return "Q";
  return "F_" + std::to_string(spec.modulus);
}

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<detail::u128>(a) * b) % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e != 0) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) noexcept {
  if (n < 2) return false;
  static constexpr std::array<std::uint64_t, 12> kBases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (std::uint64_t b : kBases) {
    if (n % b == 0) return n == b;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t b : kBases) {
    std::uint64_t x = powmod(b, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

PrimeField::PrimeField(std::uint64_t p) : p_(p) {
  if (p >= kMaxModulus) throw Error(Errc::NotPrime, "modulus must be below 2^61");
  if (!is_prime_u64(p)) throw Error(Errc::NotPrime, std::to_string(p) + " is not prime");
}

PrimeField::value_type PrimeField::inv(value_type a) const {
  if (a == 0) throw Error(Errc::DivisionByZero, "inverse of zero in " + qks::to_string(spec()));
  // Extended Euclid on signed 128-bit values; p < 2^61 keeps everything in range.
  detail::i128 r0 = p_, r1 = a, t0 = 0, t1 = 1;
  while (r1 != 0) {
    detail::i128 q = r0 / r1;
    detail::i128 r2 = r0 - q * r1;
    r0 = r1;
    r1 = r2;
    detail::i128 t2 = t0 - q * t1;
    t0 = t1;
    t1 = t2;
  }
  if (t0 < 0) t0 += p_;
  return static_cast<value_type>(t0);
}

PrimeField::value_type PrimeField::pow(value_type a, std::uint64_t e) const noexcept {
  return powmod(a, e, p_);
}

PrimeField::value_type PrimeField::from_int(std::int64_t v) const noexcept {
  if (v >= 0) return static_cast<std::uint64_t>(v) % p_;
  std::uint64_t m = static_cast<std::uint64_t>(-(v + 1)) + 1;
  return neg(m % p_);
}

PrimeField::value_type PrimeField::parse(std::string_view text) const {
  std::string_view s = trim(text);
  auto slash = s.find('/');
  if (slash != std::string_view::npos) {
    value_type num = parse(s.substr(0, slash));
    value_type den = parse(s.substr(slash + 1));
    if (den == 0) throw Error(Errc::SchemaError, "zero denominator in '" + std::string(text) + "'");
    return div(num, den);
  }
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) throw Error(Errc::SchemaError, "empty scalar '" + std::string(text) + "'");
  value_type acc = 0;
  for (char c : s) {
    if (c < '0' || c > '9') throw Error(Errc::SchemaError, "invalid scalar '" + std::string(text) + "'");
    acc = add(mul(acc, 10 % p_), static_cast<value_type>(c - '0') % p_);
  }
  return negative ? neg(acc) : acc;
}

RationalField::value_type RationalField::inv(const value_type& a) const {
  if (sgn(a) == 0) throw Error(Errc::DivisionByZero, "inverse of zero in Q");
  value_type r = 1 / a;
  r.canonicalize();
  return r;
}

RationalField::value_type RationalField::pow(const value_type& a, std::uint64_t e) const {
  value_type r = 1, b = a;
  while (e != 0) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

RationalField::value_type RationalField::parse(std::string_view text) const {
  std::string s(trim(text));
  if (s.empty()) throw Error(Errc::SchemaError, "empty scalar");
  if (s.front() == '+') s.erase(0, 1);
  auto slash = s.find('/');
  auto valid_int = [](std::string_view t) {
    if (!t.empty() && t.front() == '-') t.remove_prefix(1);
    if (t.empty()) return false;
    for (char c : t)
      if (c < '0' || c > '9') return false;
    return true;
  };
  std::string_view sv(s);
  if (slash == std::string::npos ? !valid_int(sv)
                                 : (!valid_int(sv.substr(0, slash)) || !valid_int(sv.substr(slash + 1)) ||
                                    sv[slash + 1] == '-')) {
    throw Error(Errc::SchemaError, "invalid rational '" + std::string(text) + "'");
  }
  value_type r;
  if (r.set_str(s, 10) != 0) throw Error(Errc::SchemaError, "invalid rational '" + std::string(text) + "'");
  if (sgn(r.get_den()) == 0) throw Error(Errc::SchemaError, "zero denominator in '" + std::string(text) + "'");
  r.canonicalize();
  return r;
}

std::string RationalField::to_string(const value_type& a) const { return a.get_str(10); }

}  // namespace qks
