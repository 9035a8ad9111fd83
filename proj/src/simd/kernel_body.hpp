#pragma once

// Per-point loops shared by the scalar kernels and the AVX2 remainder path, so
// that every lane sees the same sequence of operations.

#include <algorithm>
#include <cmath>

#include "torharm/simd/kernels.hpp"

namespace torharm::simd::detail {

struct PointResult {
  double value, last, prev;
};

inline PointResult spherical_point(const ZonalSphericalPlan& plan, double q, double u) {
  const int K = plan.degree();
  double qk = 1.0, p_prev = 0.0, p = 1.0;
  double sum = 0.0, comp = 0.0, last = 0.0, prev = 0.0;
  for (int k = 0; k <= K; ++k) {
    const double term = plan.coef[k] * qk * p;
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    const double mag = std::fabs(term);
    if (k > K - kTailWindow) {
      last = std::max(last, mag);
    } else if (k > K - 2 * kTailWindow) {
      prev = std::max(prev, mag);
    }
    const double p_next = plan.alpha[k] * u * p - plan.gamma[k] * p_prev;
    p_prev = p;
    p = p_next;
    qk = qk * q;
  }
  return {sum, last, prev};
}

inline PointResult toroidal_point(const ZonalToroidalPlan& plan, double beta, double p_m_half, double p_half,
                                  double cos_eta) {
  const int N = plan.order();
  // state at n = 0; the n = -1 slots hold P_{-3/2} = P_{1/2} and cos(-eta)
  double p_prev = p_half, p = p_m_half;
  double c_prev = cos_eta, c = 1.0;
  const double two_cos = 2.0 * cos_eta;
  double sum = 0.0, comp = 0.0, last = 0.0, prev = 0.0;
  for (int n = 0; n <= N; ++n) {
    const double term = plan.weight[n] * p * c;
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    const double mag = std::fabs(term);
    if (n > N - kTailWindow) {
      last = std::max(last, mag);
    } else if (n > N - 2 * kTailWindow) {
      prev = std::max(prev, mag);
    }
    const double p_next = plan.alpha[n] * beta * p - plan.gamma[n] * p_prev;
    p_prev = p;
    p = p_next;
    const double c_next = two_cos * c - c_prev;
    c_prev = c;
    c = c_next;
  }
  return {sum, last, prev};
}

}  // namespace torharm::simd::detail
