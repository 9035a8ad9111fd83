#pragma once

namespace torharm {

/// Outcome of a truncated series as seen from its tail.
enum class SeriesStatus {
  Converged,
  Slow,      // tail still shrinking but above tolerance at the cap
  Diverged,  // tail not shrinking
};

const char* to_string(SeriesStatus status) noexcept;

struct EvalResult {
  double value = 0.0;
  bool converged = false;
  int terms_used = 0;
  double est_error = 0.0;
  SeriesStatus status = SeriesStatus::Converged;
  // max |partial sum| / |final sum|; 1 when no cancellation occurred.
  double cancellation = 1.0;
};

}  // namespace torharm
