#pragma once

#include <stdexcept>
#include <string>

namespace torharm {

enum class ErrorKind {
  InvalidArgument,
  FocalRingSingularity,
  DegenerateLimit,
  AxisPoint,
  TooCloseToSingularity,
  QuadratureFailure,
  BranchBoundary,
  CoincidentPoints,
  InvalidGeometry,
  InsideConductor,
  NoExpansion,
  Overflow,
};

const char* to_string(ErrorKind kind) noexcept;

/// All library failures are reported through this exception; `kind()` is the
/// machine-readable part.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace torharm
