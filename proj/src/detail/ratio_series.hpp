#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

namespace torharm::detail {

template <class T>
struct RatioSeriesSum {
  T sum;
  long terms = 0;
  bool converged = false;
  double trunc_bound = 0.0;  // relative
  double max_term = 1.0;     // relative to the first term
};

/// Sums 1 + sum_{k>=1} prod_{j<k} ratio(j) * z^k for a series of positive
/// terms whose term ratio tends to `limit`. Stops once the geometric tail bound
/// term * q / (1 - q), q = max(next ratio, limit), drops below tol * sum.
template <class T, class Ratio>
RatioSeriesSum<T> sum_ratio_series(Ratio&& ratio, const T& z, double limit, double tol,
                                   long max_terms) {
  RatioSeriesSum<T> out;
  T sum(1);
  T term(1);
  T q = ratio(0) * z;
  double max_term = 1.0;
  long k = 0;
  for (; k < max_terms; ++k) {
    term *= q;
    sum += term;
    q = ratio(k + 1) * z;
    const double qd = static_cast<double>(q);
    const double td = static_cast<double>(term);
    max_term = std::max(max_term, td);
    const double r = std::max(qd, limit);
    if (r < 1.0) {
      const double bound = td * r / (1.0 - r) / static_cast<double>(sum);
      if (bound <= tol || td == 0.0) {
        out.converged = true;
        out.trunc_bound = bound;
        ++k;
        break;
      }
    }
  }
  out.sum = sum;
  out.terms = k + 1;
  out.max_term = max_term / static_cast<double>(sum);
  if (!out.converged) {
    const double r = std::max(static_cast<double>(q), limit);
    out.trunc_bound = r < 1.0 ? static_cast<double>(term) * r / (1.0 - r) / static_cast<double>(sum)
                              : std::numeric_limits<double>::infinity();
  }
  return out;
}

}  // namespace torharm::detail
