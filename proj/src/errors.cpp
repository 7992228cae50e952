#include "pathalg/errors.hpp"

namespace pathalg {

ErrorCategory category_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::CharacteristicTooSmall:
    case ErrorCode::NotSplit:
    case ErrorCode::SplittingFailed:
      return ErrorCategory::Unsupported;
    case ErrorCode::LiftDiverged:
    case ErrorCode::KernelNotInJ:
    case ErrorCode::Internal:
      return ErrorCategory::Internal;
    default:
      return ErrorCategory::Input;
  }
}

const char* code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnknownReference: return "UnknownReference";
    case ErrorCode::DuplicateName: return "DuplicateName";
    case ErrorCode::InvalidField: return "InvalidField";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonAssociative: return "NonAssociative";
    case ErrorCode::NotAnIdeal: return "NotAnIdeal";
    case ErrorCode::InvalidIdempotentSet: return "InvalidIdempotentSet";
    case ErrorCode::NoUnity: return "NoUnity";
    case ErrorCode::RelationOutsideJ: return "RelationOutsideJ";
    case ErrorCode::RelationOutsideJ2: return "RelationOutsideJ2";
    case ErrorCode::PathExplosion: return "PathExplosion";
    case ErrorCode::CompatibilityViolation: return "CompatibilityViolation";
    case ErrorCode::NotAHomomorphism: return "NotAHomomorphism";
    case ErrorCode::RelationNotSatisfied: return "RelationNotSatisfied";
    case ErrorCode::InvalidModule: return "InvalidModule";
    case ErrorCode::NotBijective: return "NotBijective";
    case ErrorCode::SizeMismatch: return "SizeMismatch";
    case ErrorCode::MTooLarge: return "MTooLarge";
    case ErrorCode::BadPartition: return "BadPartition";
    case ErrorCode::NotSemisimple: return "NotSemisimple";
    case ErrorCode::NotNilpotent: return "NotNilpotent";
    case ErrorCode::NotElementary: return "NotElementary";
    case ErrorCode::CharacteristicTooSmall: return "CharacteristicTooSmall";
    case ErrorCode::NotSplit: return "NotSplit";
    case ErrorCode::SplittingFailed: return "SplittingFailed";
    case ErrorCode::LiftDiverged: return "LiftDiverged";
    case ErrorCode::KernelNotInJ: return "KernelNotInJ";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace pathalg
