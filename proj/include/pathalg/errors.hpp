#ifndef PATHALG_ERRORS_HPP
#define PATHALG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pathalg {

enum class ErrorCode {
  // malformed or inconsistent input
  SyntaxError,
  UnknownReference,
  DuplicateName,
  InvalidField,
  FieldMismatch,
  DimensionMismatch,
  NonAssociative,
  NotAnIdeal,
  InvalidIdempotentSet,
  NoUnity,
  RelationOutsideJ,
  RelationOutsideJ2,
  PathExplosion,
  CompatibilityViolation,
  NotAHomomorphism,
  RelationNotSatisfied,
  InvalidModule,
  NotBijective,
  SizeMismatch,
  MTooLarge,
  BadPartition,
  NotSemisimple,
  NotNilpotent,
  NotElementary,
  // outside the supported mathematical domain
  CharacteristicTooSmall,
  NotSplit,
  SplittingFailed,
  // internal consistency failures
  LiftDiverged,
  KernelNotInJ,
  Internal,
};

enum class ErrorCategory { Input, Unsupported, Internal };

ErrorCategory category_of(ErrorCode code);
const char* code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(code_name(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  ErrorCategory category() const noexcept { return category_of(code_); }

 private:
  ErrorCode code_;
};

}  // namespace pathalg

#endif  // PATHALG_ERRORS_HPP
