#include "torharm/special.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <numbers>

#include "detail/ratio_series.hpp"
#include "torharm/errors.hpp"

namespace torharm {

namespace {

using Extended = boost::multiprecision::cpp_bin_float_50;

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kLostDigitsLimit = 1e6;
// Past this many terms the rounding in the running term product alone costs
// about three digits, so the sum is redone in extended precision.
constexpr long kLongSeries = 2000;
// Below this argument Q is evaluated through P of the reciprocal-like argument.
constexpr double kQSwitch = 1.02;

// -1 for odd k, +1 for even k
double parity_sign(int k) { return (k & 1) ? -1.0 : 1.0; }

}  // namespace

double double_factorial(int n) { return double_factorial_scaled(n).to_double(); }

ScaledReal double_factorial_scaled(int n) {
  if (n >= -1) {
    ScaledReal r(1.0);
    for (int j = n; j > 1; j -= 2) r *= ScaledReal(static_cast<double>(j));
    return r;
  }
  if ((n & 1) == 0) throw Error(ErrorKind::InvalidArgument, "double factorial of negative even");
  // (-2j-1)!! = (-1)^j / (2j-1)!!
  const int j = (-n - 1) / 2;
  return ScaledReal(parity_sign(j)) / double_factorial_scaled(2 * j - 1);
}

ScaledReal gamma_half_scaled(int j) {
  const ScaledReal sqrt_pi(std::sqrt(kPi));
  if (j >= 0) {
    // sqrt(pi) (2j-1)!! / 2^j
    return ScaledReal::from_parts(1.0, -j) * double_factorial_scaled(2 * j - 1) * sqrt_pi;
  }
  const int n = -j;
  // sqrt(pi) (-2)^n / (2n-1)!!
  return ScaledReal::from_parts(parity_sign(n), n) * sqrt_pi / double_factorial_scaled(2 * n - 1);
}

double gamma_half(int n, HalfSign sign) {
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "gamma_half expects n >= 0");
  return gamma_half_scaled(sign == HalfSign::Plus ? n : -n).to_double();
}

// ---------------------------------------------------------------------------

void assoc_legendre_column(int m, double u, std::span<double> out) {
  if (m < 0) throw Error(ErrorKind::InvalidArgument, "assoc_legendre_column expects m >= 0");
  std::fill(out.begin(), out.end(), 0.0);
  const int k_max = static_cast<int>(out.size()) - 1;
  if (k_max < m) return;
  const double s = std::sqrt(std::max(0.0, (1.0 - u) * (1.0 + u)));
  double pmm = 1.0;
  for (int j = 1; j <= m; ++j) pmm *= (2.0 * j - 1.0) * s;
  out[m] = pmm;
  if (k_max == m) return;
  out[m + 1] = (2.0 * m + 1.0) * u * pmm;
  for (int k = m + 1; k < k_max; ++k) {
    out[k + 1] = ((2.0 * k + 1.0) * u * out[k] - (k + m) * out[k - 1]) / (k - m + 1.0);
  }
}

void assoc_legendre_column_normalized(int m, double u, std::span<double> out) {
  if (m < 0) throw Error(ErrorKind::InvalidArgument, "normalized column expects m >= 0");
  std::fill(out.begin(), out.end(), 0.0);
  const int k_max = static_cast<int>(out.size()) - 1;
  if (k_max < m) return;
  const double s = std::sqrt(std::max(0.0, (1.0 - u) * (1.0 + u)));
  // sqrt((2m)!) ... folded: pmm = (2m-1)!! s^m / sqrt((2m)!)
  double pmm = 1.0;
  for (int j = 1; j <= m; ++j) pmm *= s * std::sqrt((2.0 * j - 1.0) / (2.0 * j));
  out[m] = pmm;
  if (k_max == m) return;
  out[m + 1] = std::sqrt(2.0 * m + 1.0) * u * pmm;
  for (int k = m + 1; k < k_max; ++k) {
    const double kp = k + 1.0;
    const double a = (2.0 * k + 1.0) / std::sqrt((kp - m) * (kp + m));
    const double b = std::sqrt((k - m) * static_cast<double>(k + m) / ((kp - m) * (kp + m)));
    out[k + 1] = a * u * out[k] - b * out[k - 1];
  }
}

double assoc_legendre(int n, int m, double u) {
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "degree must be non-negative");
  if (!(std::fabs(u) <= 1.0)) throw Error(ErrorKind::InvalidArgument, "|u| must be <= 1");
  const int am = std::abs(m);
  if (am > n) return 0.0;
  std::vector<double> col(n + 1);
  assoc_legendre_column(am, u, col);
  if (m >= 0) return col[n];
  // (-1)^m (n-m)!/(n+m)!
  double ratio = 1.0;
  for (int j = n - am + 1; j <= n + am; ++j) ratio /= j;
  return parity_sign(am) * ratio * col[n];
}

double legendre_zero(int k, int m) {
  if (k < 0 || m < 0) throw Error(ErrorKind::InvalidArgument, "legendre_zero expects k, m >= 0");
  if ((k + m) & 1) return 0.0;
  const ScaledReal v = double_factorial_scaled(k - m - 1) / double_factorial_scaled(k + m);
  return parity_sign((k + m) / 2) * v.to_double();
}

// ---------------------------------------------------------------------------
// Half-integer degree series

namespace {

template <class T>
detail::RatioSeriesSum<T> p_series(int n, int m, const T& t, double limit, double tol, long cap) {
  // b_{k+1}/b_k = (2(n+m+k)+1)(2(n+k)+1) / (4 (k+1) (m+k+1))
  auto ratio = [n, m](long k) {
    return T((2.0 * (n + m + k) + 1.0) * (2.0 * (n + k) + 1.0)) /
           T(4.0 * (k + 1.0) * (m + k + 1.0));
  };
  return detail::sum_ratio_series<T>(ratio, t, limit, tol, cap);
}

template <class T>
detail::RatioSeriesSum<T> q_series(int n, int m, const T& y, double limit, double tol, long cap) {
  // d_{k+1}/d_k = (4k+2n+2m+1)(4k+2n+2m+3) / ((2k+2)(2k+2n+2))
  auto ratio = [n, m](long k) {
    return T((4.0 * k + 2.0 * n + 2.0 * m + 1.0) * (4.0 * k + 2.0 * n + 2.0 * m + 3.0)) /
           T((2.0 * k + 2.0) * (2.0 * k + 2.0 * n + 2.0));
  };
  return detail::sum_ratio_series<T>(ratio, y, limit, tol, cap);
}

struct SumOutcome {
  double sum = 0.0;
  long terms = 0;
  bool converged = false;
  double rel_error = 0.0;
  bool extended = false;
};

// Runs the double pass and, when it lost too many digits or was forced, the
// 50-digit pass. Series variable is passed in both precisions.
template <class DoubleRun, class ExtRun>
SumOutcome sum_with_fallback(DoubleRun&& run_double, ExtRun&& run_ext, const SeriesOptions& opt) {
  SumOutcome out;
  if (!opt.force_extended) {
    const auto s = run_double();
    out.sum = s.sum;
    out.terms = s.terms;
    out.converged = s.converged;
    out.rel_error = s.trunc_bound + std::sqrt(static_cast<double>(s.terms)) * kEps * s.max_term;
    if (s.max_term < kLostDigitsLimit && s.terms <= kLongSeries) return out;
  }
  const auto s = run_ext();
  out.sum = static_cast<double>(s.sum);
  out.terms = s.terms;
  out.converged = s.converged;
  out.rel_error = s.trunc_bound + kEps;
  out.extended = true;
  return out;
}

void check_order(int n, int m) {
  if (n < 0 || m < 0) throw Error(ErrorKind::InvalidArgument, "degree and order indices must be >= 0");
}

EvalResult to_eval(const ScaledEval& s) {
  EvalResult r;
  r.value = s.value.to_double();
  r.converged = s.converged;
  r.terms_used = s.terms_used;
  r.est_error = std::fabs(r.value) * s.rel_error;
  r.status = s.converged ? SeriesStatus::Converged : SeriesStatus::Slow;
  return r;
}

}  // namespace

ScaledEval legendre_P_half_scaled(int n, int m, double x, const SeriesOptions& opt) {
  check_order(n, m);
  if (!(x >= 1.0) || !std::isfinite(x)) {
    throw Error(ErrorKind::InvalidArgument, "P_{n-1/2}^m requires finite x >= 1");
  }
  const double xm1 = x - 1.0;
  const double xp1 = x + 1.0;
  const double t = xm1 / xp1;

  ScaledEval out;
  if (m > 0 && xm1 == 0.0) {
    out.converged = true;
    out.terms_used = 1;
    return out;
  }

  const auto sum = sum_with_fallback(
      [&] { return p_series<double>(n, m, t, t, opt.tol, opt.max_terms); },
      [&] {
        const Extended te = Extended(xm1) / Extended(xp1);
        return p_series<Extended>(n, m, te, t, opt.tol, opt.max_terms / 10);
      },
      opt);

  // sqrt(2 pi) (x^2-1)^{m/2} (x+1)^{-n-m-1/2} (2n+2m-1)!! / (Gamma(n-m+1/2) m! 2^m)
  ScaledReal pre(std::sqrt(2.0 * kPi));
  pre *= pow_int(ScaledReal(std::sqrt(xm1 * xp1)), m);
  pre /= pow_int(ScaledReal(xp1), n + m) * ScaledReal(std::sqrt(xp1));
  pre *= double_factorial_scaled(2 * (n + m) - 1);
  pre /= gamma_half_scaled(n - m);
  for (int j = 1; j <= m; ++j) pre /= ScaledReal(2.0 * j);

  out.value = pre * ScaledReal(sum.sum);
  out.converged = sum.converged;
  out.terms_used = static_cast<int>(sum.terms);
  out.rel_error = sum.rel_error + 2.0 * (n + 2 * m + 4) * kEps;
  out.used_extended = sum.extended;
  return out;
}

EvalResult legendre_P_half(int n, int m, double x, double tol) {
  SeriesOptions opt;
  opt.tol = tol;
  return to_eval(legendre_P_half_scaled(n, m, x, opt));
}

ScaledEval legendre_Q_half_scaled(int n, int m, double x, const SeriesOptions& opt) {
  check_order(n, m);
  if (!std::isfinite(x) || std::isnan(x)) throw Error(ErrorKind::InvalidArgument, "x must be finite");
  if (!(x > 1.0)) {
    throw Error(ErrorKind::TooCloseToSingularity, "Q_{n-1/2}^m is singular at x = 1");
  }
  const double xm1 = x - 1.0;
  const double xp1 = x + 1.0;
  if (x < kQSwitch) {
    // The series in 1/x^2 stalls here. Use the Whipple relation instead:
    // Q_{n-1/2}^m(x) = (-1)^n pi^{3/2} / Gamma(n-m+1/2) / sqrt(2 s) P_{m-1/2}^n(x / s)
    // with s = sqrt(x^2 - 1).
    const double s = std::sqrt(xm1 * xp1);
    ScaledEval p = legendre_P_half_scaled(m, n, x / s, opt);
    if (!p.converged && xm1 < 1e-6) {
      throw Error(ErrorKind::TooCloseToSingularity,
                  "series for Q_{n-1/2}^m does not converge this close to x = 1");
    }
    p.value *= ScaledReal(parity_sign(n) * kPi * std::sqrt(kPi) / std::sqrt(2.0 * s));
    p.value /= gamma_half_scaled(n - m);
    p.rel_error += 8 * kEps;
    return p;
  }

  const double y = 1.0 / (4.0 * x * x);
  const double limit = 1.0 / (x * x);

  const auto sum = sum_with_fallback(
      [&] { return q_series<double>(n, m, y, limit, opt.tol, opt.max_terms); },
      [&] {
        const Extended xe(x);
        const Extended ye = 1 / (4 * xe * xe);
        return q_series<Extended>(n, m, ye, limit, opt.tol, opt.max_terms / 10);
      },
      opt);

  // pi (-1)^m (x^2-1)^{m/2} / (2x)^{n+m+1/2} * (2n+2m-1)!! / (2n)!!
  ScaledReal pre(kPi * parity_sign(m));
  pre *= pow_int(ScaledReal(std::sqrt(xm1 * xp1)), m);
  pre /= pow_int(ScaledReal(2.0 * x), n + m) * ScaledReal(std::sqrt(2.0 * x));
  pre *= double_factorial_scaled(2 * (n + m) - 1);
  pre /= double_factorial_scaled(2 * n);

  ScaledEval out;
  out.value = pre * ScaledReal(sum.sum);
  out.converged = sum.converged;
  out.terms_used = static_cast<int>(sum.terms);
  out.rel_error = sum.rel_error + 2.0 * (n + 2 * m + 4) * kEps;
  out.used_extended = sum.extended;
  return out;
}

EvalResult legendre_Q_half(int n, int m, double x, double tol) {
  SeriesOptions opt;
  opt.tol = tol;
  return to_eval(legendre_Q_half_scaled(n, m, x, opt));
}

std::vector<ScaledReal> legendre_P_half_sequence_scaled(int n_max, int m, double x) {
  check_order(n_max, m);
  std::vector<ScaledReal> out(n_max + 1);
  const int direct = std::min(n_max, m + 1);
  for (int n = 0; n <= direct; ++n) out[n] = legendre_P_half_scaled(n, m, x).value;
  // (n-m+1/2) P_{n+1/2} = 2n x P_{n-1/2} - (n+m-1/2) P_{n-3/2}
  for (int n = direct; n < n_max; ++n) {
    out[n + 1] = (ScaledReal(2.0 * n * x) * out[n] - ScaledReal(n + m - 0.5) * out[n - 1]) /
                 ScaledReal(n - m + 0.5);
  }
  return out;
}

std::vector<double> legendre_P_half_sequence(int n_max, int m, double x) {
  const auto scaled = legendre_P_half_sequence_scaled(n_max, m, x);
  std::vector<double> out(scaled.size());
  std::transform(scaled.begin(), scaled.end(), out.begin(),
                 [](const ScaledReal& v) { return v.to_double(); });
  return out;
}

// ---------------------------------------------------------------------------

EvalResult harmonic_eval(const HarmonicSpec& spec, const ToroidalPoint& t, double a, double tol) {
  check_order(spec.n, spec.m);
  if (!(a > 0.0)) throw Error(ErrorKind::InvalidArgument, "focal radius must be positive");

  EvalResult out;
  if (spec.parity == Parity::Sin && spec.n == 0) {
    out.converged = true;
    return out;
  }

  const double trig = spec.parity == Parity::Cos ? std::cos(spec.n * t.eta) : std::sin(spec.n * t.eta);
  const double azimuthal = std::cos(spec.m * t.phi);

  ScaledEval fn;
  double prefactor = 0.0;
  SeriesOptions opt;
  opt.tol = tol;
  if (spec.family == Family::Standard) {
    prefactor = t.delta;
    fn = spec.kind == Kind::Ring ? legendre_P_half_scaled(spec.n, spec.m, t.beta, opt)
                                 : legendre_Q_half_scaled(spec.n, spec.m, t.beta, opt);
  } else {
    if (t.on_axis) {
      throw Error(ErrorKind::AxisPoint, "alternate harmonics carry sqrt(a/rho), undefined on the axis");
    }
    prefactor = std::sqrt(a / t.rho);
    // degree and order swap places
    fn = spec.kind == Kind::Ring ? legendre_Q_half_scaled(spec.m, spec.n, t.chi, opt)
                                 : legendre_P_half_scaled(spec.m, spec.n, t.chi, opt);
  }

  out.value = (fn.value * ScaledReal(prefactor * trig * azimuthal)).to_double();
  out.converged = fn.converged;
  out.terms_used = fn.terms_used;
  out.est_error = std::fabs(out.value) * (fn.rel_error + 8 * kEps);
  out.status = fn.converged ? SeriesStatus::Converged : SeriesStatus::Slow;
  return out;
}

double oracle_ring_integral(int m, const CartesianPoint& p, double a, double tol) {
  if (m < 0) throw Error(ErrorKind::InvalidArgument, "m must be >= 0");
  const double rho = std::hypot(p.x, p.y);
  const double r2 = rho * rho + p.z * p.z;
  if (std::hypot(rho - a, p.z) < kDefaultRingEps * a) {
    throw Error(ErrorKind::FocalRingSingularity, "ring integral is singular on the focal ring");
  }
  const double phi = std::atan2(p.y, p.x);

  // With psi = phi - phi', the sine part integrates to zero and the integrand
  // is even in psi, so integrate over [0, pi] and double.
  auto integrand = [&](double psi) {
    return std::cos(m * psi) * a / std::sqrt(r2 + a * a - 2.0 * rho * a * std::cos(psi));
  };
  double err = 0.0;
  const double half = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      integrand, 0.0, kPi, 30, tol * 1e-2, &err);
  const double integral = 2.0 * half;
  const double abs_err = 2.0 * err;

  const double prefactor =
      double_factorial(2 * m - 1) / (std::pow(-2.0, m) * kPi) * std::cos(m * phi);
  if (!(abs_err * std::fabs(prefactor) <= tol)) {
    throw Error(ErrorKind::QuadratureFailure, "adaptive quadrature did not reach the tolerance");
  }
  return prefactor * integral;
}

}  // namespace torharm
