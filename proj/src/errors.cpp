#include "torharm/errors.hpp"

#include "torharm/eval_result.hpp"

namespace torharm {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::FocalRingSingularity: return "FocalRingSingularity";
    case ErrorKind::DegenerateLimit: return "DegenerateLimit";
    case ErrorKind::AxisPoint: return "AxisPoint";
    case ErrorKind::TooCloseToSingularity: return "TooCloseToSingularity";
    case ErrorKind::QuadratureFailure: return "QuadratureFailure";
    case ErrorKind::BranchBoundary: return "BranchBoundary";
    case ErrorKind::CoincidentPoints: return "CoincidentPoints";
    case ErrorKind::InvalidGeometry: return "InvalidGeometry";
    case ErrorKind::InsideConductor: return "InsideConductor";
    case ErrorKind::NoExpansion: return "NoExpansion";
    case ErrorKind::Overflow: return "Overflow";
  }
  return "Unknown";
}

const char* to_string(SeriesStatus status) noexcept {
  switch (status) {
    case SeriesStatus::Converged: return "OK";
    case SeriesStatus::Slow: return "SLOW";
    case SeriesStatus::Diverged: return "DIV";
  }
  return "?";
}

}  // namespace torharm
