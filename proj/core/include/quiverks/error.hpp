#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qks {

/// Failure categories raised by the library. The command-line tool maps
/// `InvariantViolation` to exit code 3 and every other code to exit code 2.
enum class Errc {
  InvalidArgument,
  NotPrime,
  DivisionByZero,
  UnsupportedField,
  DanglingArrow,
  DuplicateId,
  EmptyQuiver,
  InvalidPath,
  TwistedRealization,
  IncoherentTable,
  MismatchedContext,
  NotIdempotent,
  NotEndomorphism,
  SmallCharacteristic,
  DivisionUncertain,
  NotIdempotentModJ,
  RelationViolation,
  NotNatural,
  MismatchedM,
  SchemaError,
  ShapeError,
  PreconditionViolation,
  InvariantViolation,
};

std::string_view errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// Throws `InvariantViolation`; used for postconditions that can only fail on a bug.
inline void ensure(bool condition, const char* what) {
  if (!condition) throw Error(Errc::InvariantViolation, what);
}

}  // namespace qks
