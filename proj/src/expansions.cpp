#include "torharm/expansions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "torharm/errors.hpp"

namespace torharm {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kBranchDeadZone = 1e-9;

double parity_sign(int k) { return (k & 1) ? -1.0 : 1.0; }

// First k past the peak of a unimodal log-envelope where it drops below log(tol).
template <class LogEnvelope>
Truncation first_crossing(LogEnvelope&& log_env, double tol, int k_min, int cap) {
  const double target = std::log(tol);
  double prev = log_env(k_min);
  for (int k = k_min + 1; k <= cap; ++k) {
    const double cur = log_env(k);
    if (cur < target && cur <= prev) return {k, false};
    prev = cur;
  }
  return {cap, true};
}

// Neumaier's variant of compensated summation, plus the largest partial sum
// seen for the cancellation metric.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;
  double max_partial = 0.0;

  void add(double x) {
    const double t = sum + x;
    if (std::fabs(sum) >= std::fabs(x)) {
      carry += (sum - t) + x;
    } else {
      carry += (x - t) + sum;
    }
    sum = t;
    max_partial = std::max(max_partial, std::fabs(sum + carry));
  }
  double value() const { return sum + carry; }
};

}  // namespace

const char* to_string(Region region) noexcept {
  switch (region) {
    case Region::Converges: return "converges";
    case Region::Diverges: return "diverges";
    case Region::Boundary: return "boundary";
  }
  return "?";
}

Truncation truncation_estimate(double xi, int n, int m, double tol, int cap) {
  if (!(xi > 0.0) || !(tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "need xi > 0 and tol > 0");
  const double log_pre = 0.5 * std::log(kPi) - 0.5 * std::log(std::sinh(xi));
  auto log_env = [&](int k) {
    return log_pre - k * xi + (2.0 * n + 1.0 + m) * std::log(k + 1.0) - 0.5 * std::log(2.0 * k - 1.0);
  };
  return first_crossing(log_env, tol, 1, cap);
}

Truncation spherical_truncation_estimate(double q, int n, int m, double tol, int cap) {
  if (!(q >= 0.0) || !(tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "need q >= 0 and tol > 0");
  if (q >= 1.0) return {cap, true};
  if (q == 0.0) return {std::max(n, m), false};
  const double lq = std::log(q);
  auto log_env = [&](int k) { return k * lq + (2.0 * n + 1.0 + m) * std::log(k + 1.0); };
  auto t = first_crossing(log_env, tol, 0, cap);
  t.k_max = std::max(t.k_max, m + 1);
  return t;
}

EvalResult ring_via_spherical(const CoeffTable& table, int n, Parity parity, const CartesianPoint& p,
                              double a, int k_max, double tol) {
  if (!(a > 0.0)) throw Error(ErrorKind::InvalidArgument, "focal radius must be positive");
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "toroidal order must be >= 0");
  if (parity == Parity::Sin && n == 0) {
    throw Error(ErrorKind::InvalidArgument, "sine-type series needs n >= 1");
  }
  const int m = table.m();
  const double rho = std::hypot(p.x, p.y);
  const double r = std::hypot(rho, p.z);
  if (std::fabs(r - a) < kBranchDeadZone * a) {
    throw Error(ErrorKind::BranchBoundary, "r = a separates the inner and outer series");
  }
  const bool inner = r < a;
  const double q = inner ? r / a : a / r;
  if (k_max <= 0) k_max = spherical_truncation_estimate(q, n, m, 0.1 * tol).k_max;
  if (n > table.n_max() || k_max > table.k_max()) {
    throw Error(ErrorKind::InvalidArgument, "coefficient table too small for the requested truncation");
  }

  const double u = r > 0.0 ? p.z / r : 0.0;
  std::vector<double> plm(k_max + 1);
  assoc_legendre_column(m, u, plm);

  const bool is_cos = parity == Parity::Cos;
  double sum = 0.0;
  double recent[3] = {0.0, 0.0, 0.0};
  double qk = inner ? std::pow(q, m) : std::pow(q, m + 1);
  for (int k = m; k <= k_max; ++k, qk *= q) {
    // cos-type terms need k+m even, sin-type k+m odd
    if (((k + m) & 1) != (is_cos ? 0 : 1)) continue;
    const ScaledReal coef = is_cos ? table.c(n, k) * ScaledReal(legendre_zero(k, m))
                                   : table.s(n, k) * ScaledReal(legendre_zero(k + 1, m));
    const double term = (coef * ScaledReal(qk * plm[k])).to_double();
    sum += term;
    recent[0] = recent[1];
    recent[1] = recent[2];
    recent[2] = std::fabs(term);
  }

  double branch = inner ? parity_sign(n) : (is_cos ? 1.0 : -1.0);
  const double overall = 2.0 * parity_sign(m) * branch * std::cos(m * std::atan2(p.y, p.x));

  // geometric tail past k_max, with the polynomial growth of the coefficients
  // folded into the per-term ratio
  const double growth = std::pow((k_max + 2.0) / (k_max + 1.0), 2.0 * n + 1.0 + m);
  const double ratio = q * q * growth;  // terms of one parity are two degrees apart
  const double last = std::max({recent[0], recent[1], recent[2]});
  const double tail = ratio < 1.0 ? last * ratio / (1.0 - ratio)
                                  : std::numeric_limits<double>::infinity();

  EvalResult out;
  out.value = overall * sum;
  out.terms_used = k_max + 1;
  out.est_error = std::fabs(overall) * (tail + (k_max + 1) * kEps * std::fabs(sum));
  out.converged = out.est_error <= tol * std::max(std::fabs(out.value), tol);
  out.status = out.converged ? SeriesStatus::Converged : SeriesStatus::Slow;
  return out;
}

EvalResult ring_via_spherical(int n, int m, Parity parity, const CartesianPoint& p, double a, int k_max,
                              double tol) {
  if (m < 0) throw Error(ErrorKind::InvalidArgument, "azimuthal order must be >= 0");
  if (k_max <= 0) {
    const double r = std::sqrt(p.x * p.x + p.y * p.y + p.z * p.z);
    const double q = r < a ? r / a : a / r;
    k_max = spherical_truncation_estimate(q, n, m, 0.1 * tol).k_max;
  }
  const CoeffTable table = build_table(m, std::max(n, 1), std::max(k_max, 1));
  return ring_via_spherical(table, n, parity, p, a, k_max, tol);
}

EvalResult harmonic_via_spherical(const HarmonicSpec& spec, const CartesianPoint& p, double a, int k_max,
                                  double tol) {
  if (spec.kind == Kind::Axial) {
    throw Error(ErrorKind::NoExpansion,
                "axial harmonics are singular on the whole z-axis and have no spherical-harmonic series");
  }
  if (spec.parity == Parity::Sin && spec.n == 0) {
    EvalResult zero;
    zero.converged = true;
    return zero;
  }
  EvalResult r = ring_via_spherical(spec.n, spec.m, spec.parity, p, a, k_max, tol);
  if (spec.family == Family::Alternate) {
    if (std::hypot(p.x, p.y) == 0.0) {
      throw Error(ErrorKind::AxisPoint, "alternate harmonics carry sqrt(a/rho), undefined on the axis");
    }
    // inverse of the Whipple factor (-1)^n 2 / (sqrt(pi) Gamma(n-m+1/2))
    const double f = parity_sign(spec.n) * std::sqrt(kPi) * gamma_half_scaled(spec.n - spec.m).to_double() / 2.0;
    r.value *= f;
    r.est_error *= std::fabs(f);
  }
  return r;
}

EvalResult spherical_via_toroidal(int n, int m, Regularity regularity, const CartesianPoint& p, double a,
                                  int k_max, double tol) {
  if (n < 0 || m < 0) throw Error(ErrorKind::InvalidArgument, "degree and order must be >= 0");
  if (m > n) {
    EvalResult zero;
    zero.converged = true;
    return zero;
  }
  const ToroidalPoint t = to_toroidal(p, a);
  if (t.on_axis) {
    throw Error(ErrorKind::AxisPoint, "the toroidal series diverges on the axis (xi = 0)");
  }
  if (k_max <= 0) k_max = truncation_estimate(t.xi, n, m, 0.1 * tol).k_max;

  const CoeffTable table = build_table(m, std::max(k_max, 1), n + 1);
  const bool even = ((n + m) & 1) == 0;
  const bool irregular = regularity == Regularity::Irregular;

  CompensatedSum acc;
  double recent[3] = {0.0, 0.0, 0.0};
  for (int k = even ? 0 : 1; k <= k_max; ++k) {
    const ScaledReal q = legendre_Q_half_scaled(k, m, t.beta).value;
    double sign = irregular ? parity_sign(k) : 1.0;
    ScaledReal coef;
    double trig = 0.0;
    if (even) {
      coef = coeff_neg_m_c_scaled(table, k, n);
      trig = std::cos(k * t.eta);
      if (k > 0) sign *= 2.0;
    } else {
      coef = coeff_neg_m_s_scaled(table, k, n);
      trig = std::sin(k * t.eta);
    }
    const double term = (coef * q).to_double() * sign * trig;
    acc.add(term);
    recent[0] = recent[1];
    recent[1] = recent[2];
    recent[2] = std::fabs((coef * q).to_double());
  }

  double outer = even ? assoc_legendre(n, m, 0.0) : (irregular ? 2.0 : -2.0) * assoc_legendre(n + 1, m, 0.0);
  outer *= t.delta / kPi * parity_sign(m);

  const double sum = acc.value();
  const double q = std::exp(-t.xi);
  const double growth = std::pow((k_max + 2.0) / (k_max + 1.0), 2.0 * n + 1.0 + m);
  const double ratio = q * growth;
  const double last = std::max({recent[0], recent[1], recent[2]});
  const double tail = ratio < 1.0 ? last * ratio / (1.0 - ratio) : std::numeric_limits<double>::infinity();

  EvalResult out;
  out.value = outer * sum;
  out.terms_used = k_max + 1;
  out.cancellation = sum != 0.0 ? acc.max_partial / std::fabs(sum) : std::numeric_limits<double>::infinity();
  out.est_error = std::fabs(outer) * (tail + 4 * kEps * acc.max_partial);
  out.converged = out.est_error <= tol * std::max(std::fabs(out.value), tol);
  out.status = out.converged ? SeriesStatus::Converged : SeriesStatus::Slow;
  return out;
}

Region convergence_region(SeriesKind kind, const CartesianPoint& p, double a) {
  if (!(a > 0.0)) throw Error(ErrorKind::InvalidArgument, "focal radius must be positive");
  const double rho = std::hypot(p.x, p.y);
  const double r = std::hypot(rho, p.z);
  switch (kind) {
    case SeriesKind::RingInSphericalInner:
    case SeriesKind::RingInSphericalOuter: {
      if (std::fabs(r - a) <= kBranchDeadZone * a) return Region::Boundary;
      const bool inside = r < a;
      return inside == (kind == SeriesKind::RingInSphericalInner) ? Region::Converges : Region::Diverges;
    }
    case SeriesKind::SphericalInToroidal:
      if (std::hypot(rho - a, p.z) <= kBranchDeadZone * a) return Region::Boundary;
      return rho == 0.0 ? Region::Diverges : Region::Converges;
  }
  return Region::Boundary;
}

}  // namespace torharm
