#pragma once

#include <stdexcept>
#include <string>

namespace gtherm {

enum class ErrorKind {
  NotSquare,
  NotHermitian,
  NotDensityMatrix,
  DimensionMismatch,
  EigensolverFailure,
  IndexOutOfRange,
  InvalidParams,
  InvalidJ,
  SingularPoint,
  DegeneracyCrossing,
  GridTooCoarse,
  NonUniformGrid,
  UnknownColumn,
  InvalidPattern,
  NonFiniteParameter,
  InternalInconsistency,
  IoError,
};

const char* error_kind_name(ErrorKind kind) noexcept;

// Single exception type; kind() distinguishes bad input from numerical trouble
// so the CLI can map them to exit codes 1 and 2.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  bool is_validation() const noexcept {
    switch (kind_) {
      case ErrorKind::EigensolverFailure:
      case ErrorKind::SingularPoint:
      case ErrorKind::DegeneracyCrossing:
      case ErrorKind::GridTooCoarse:
      case ErrorKind::InternalInconsistency:
        return false;
      default:
        return true;
    }
  }

 private:
  ErrorKind kind_;
};

}  // namespace gtherm
