#pragma once

#include <stdexcept>
#include <string>

namespace vortexloop {

enum class ErrorKind {
  Schema,
  MorseViolation,
  OddZeroCount,
  AlternationViolation,
  OutOfRange,
  NoSymmetry,
  Orientation,
  Validation,
  ProfileMismatch,
  ConstraintViolation,
  StepRejected,
  ValidationFailed,
};

const char* to_string(ErrorKind kind) noexcept;

/// Base class of every error raised by the library. The kind drives the CLI
/// exit-code mapping.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

template <ErrorKind K>
class KindedError : public Error {
 public:
  explicit KindedError(const std::string& what) : Error(K, what) {}
};

using SchemaError = KindedError<ErrorKind::Schema>;
using MorseViolation = KindedError<ErrorKind::MorseViolation>;
using OddZeroCount = KindedError<ErrorKind::OddZeroCount>;
using AlternationViolation = KindedError<ErrorKind::AlternationViolation>;
using OutOfRange = KindedError<ErrorKind::OutOfRange>;
using NoSymmetry = KindedError<ErrorKind::NoSymmetry>;
using OrientationError = KindedError<ErrorKind::Orientation>;
using ValidationError = KindedError<ErrorKind::Validation>;
using ProfileMismatch = KindedError<ErrorKind::ProfileMismatch>;
using ConstraintViolation = KindedError<ErrorKind::ConstraintViolation>;
using StepRejected = KindedError<ErrorKind::StepRejected>;
using ValidationFailed = KindedError<ErrorKind::ValidationFailed>;

inline const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Schema: return "SchemaError";
    case ErrorKind::MorseViolation: return "MorseViolation";
    case ErrorKind::OddZeroCount: return "OddZeroCount";
    case ErrorKind::AlternationViolation: return "AlternationViolation";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::NoSymmetry: return "NoSymmetry";
    case ErrorKind::Orientation: return "OrientationError";
    case ErrorKind::Validation: return "ValidationError";
    case ErrorKind::ProfileMismatch: return "ProfileMismatch";
    case ErrorKind::ConstraintViolation: return "ConstraintViolation";
    case ErrorKind::StepRejected: return "StepRejected";
    case ErrorKind::ValidationFailed: return "ValidationFailed";
  }
  return "Error";
}

}  // namespace vortexloop
