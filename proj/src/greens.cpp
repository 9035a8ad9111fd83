#include "torharm/greens.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "torharm/errors.hpp"
#include "torharm/special.hpp"

namespace torharm {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kLookback = 3;

struct Spherical {
  double r, u, phi;
};

Spherical spherical_of(const CartesianPoint& p) {
  const double r = std::sqrt(p.x * p.x + p.y * p.y + p.z * p.z);
  return {r, r > 0.0 ? p.z / r : 0.0, std::atan2(p.y, p.x)};
}

// Running sum that reports convergence once kLookback consecutive terms are
// small relative to the sum.
class LookbackSum {
 public:
  explicit LookbackSum(double tol) : tol_(tol) {}

  bool add(double term) {
    sum_ += term;
    ++terms_;
    small_run_ = std::fabs(term) <= tol_ * std::fabs(sum_) ? small_run_ + 1 : 0;
    tail_ = std::fabs(term);
    window_max_ = small_run_ == 1 ? std::fabs(term) : std::max(window_max_, std::fabs(term));
    return done();
  }
  bool done() const { return small_run_ >= kLookback; }
  double sum() const { return sum_; }
  int terms() const { return terms_; }
  double last() const { return tail_; }

  EvalResult result(double scale) const {
    EvalResult r;
    r.value = scale * sum_;
    r.converged = done();
    r.terms_used = terms_;
    r.est_error = std::fabs(scale) * (done() ? window_max_ : tail_);
    r.status = done() ? SeriesStatus::Converged : SeriesStatus::Slow;
    return r;
  }

 private:
  double tol_;
  double sum_ = 0.0;
  double tail_ = 0.0;
  double window_max_ = 0.0;
  int terms_ = 0;
  int small_run_ = 0;
};

void check_distinct(const PointPair& pp) {
  if (pp.p1.x == pp.p2.x && pp.p1.y == pp.p2.y && pp.p1.z == pp.p2.z) {
    throw Error(ErrorKind::CoincidentPoints, "the two points coincide");
  }
}

double mixed_chi(const PointPair& pp, double rho1, double rho2) {
  const double dz = pp.p1.z - pp.p2.z;
  return (rho1 * rho1 + rho2 * rho2 + dz * dz) / (2.0 * rho1 * rho2);
}

// (r_< / r_>)^n / r_> P-bar_n^m(u1) P-bar_n^m(u2) summed over n for each m,
// where P-bar carries the factorial normalization.
std::vector<double> spherical_m_terms_impl(const Spherical& lo, const Spherical& hi, int n_max, int m_max,
                                           double dphi) {
  std::vector<double> out(m_max + 1, 0.0);
  std::vector<double> c1(n_max + 1), c2(n_max + 1);
  const double q = lo.r / hi.r;
  for (int m = 0; m <= std::min(m_max, n_max); ++m) {
    assoc_legendre_column_normalized(m, lo.u, c1);
    assoc_legendre_column_normalized(m, hi.u, c2);
    double sum = 0.0;
    double qn = std::pow(q, m);
    for (int n = m; n <= n_max; ++n, qn *= q) sum += qn * c1[n] * c2[n];
    out[m] = (m == 0 ? 1.0 : 2.0) * std::cos(m * dphi) * sum / hi.r;
  }
  return out;
}

}  // namespace

double green_direct(const PointPair& pp) {
  check_distinct(pp);
  const double dx = pp.p1.x - pp.p2.x, dy = pp.p1.y - pp.p2.y, dz = pp.p1.z - pp.p2.z;
  return 1.0 / std::sqrt(dx * dx + dy * dy + dz * dz);
}

EvalResult green_spherical(const PointPair& pp, int n_max, double tol) {
  check_distinct(pp);
  if (n_max < 0) throw Error(ErrorKind::InvalidArgument, "n_max must be >= 0");
  Spherical s1 = spherical_of(pp.p1), s2 = spherical_of(pp.p2);
  if (s1.r > s2.r) std::swap(s1, s2);
  const double dphi = s1.phi - s2.phi;
  const double q = s1.r / s2.r;

  // m-columns are built up front; each n-term sums over m <= n
  std::vector<std::vector<double>> c1(n_max + 1), c2(n_max + 1);
  for (int m = 0; m <= n_max; ++m) {
    c1[m].resize(n_max + 1);
    c2[m].resize(n_max + 1);
    assoc_legendre_column_normalized(m, s1.u, c1[m]);
    assoc_legendre_column_normalized(m, s2.u, c2[m]);
  }
  LookbackSum acc(tol);
  double qn = 1.0;
  for (int n = 0; n <= n_max; ++n, qn *= q) {
    double angular = 0.0;
    for (int m = 0; m <= n; ++m) {
      angular += (m == 0 ? 1.0 : 2.0) * std::cos(m * dphi) * c1[m][n] * c2[m][n];
    }
    if (acc.add(qn * angular)) break;
    if (q == 0.0) {
      // only the monopole survives at the origin
      EvalResult r = acc.result(1.0 / s2.r);
      r.converged = true;
      r.status = SeriesStatus::Converged;
      return r;
    }
  }
  return acc.result(1.0 / s2.r);
}

std::vector<double> green_spherical_m_terms(const PointPair& pp, int n_max, int m_max) {
  check_distinct(pp);
  Spherical s1 = spherical_of(pp.p1), s2 = spherical_of(pp.p2);
  if (s1.r > s2.r) std::swap(s1, s2);
  return spherical_m_terms_impl(s1, s2, n_max, m_max, s1.phi - s2.phi);
}

EvalResult green_toroidal(const PointPair& pp, int n_max, int m_max, double tol) {
  check_distinct(pp);
  if (n_max < 0 || m_max < 0) throw Error(ErrorKind::InvalidArgument, "caps must be >= 0");
  ToroidalPoint t1 = to_toroidal(pp.p1, pp.a), t2 = to_toroidal(pp.p2, pp.a);
  if (t1.beta > t2.beta) std::swap(t1, t2);  // point 2 nearer the focal ring
  const double deta = t1.eta - t2.eta;
  const double dphi = t1.phi - t2.phi;

  LookbackSum outer(tol);
  double inner_error = 0.0;
  bool inner_ok = true;
  for (int m = 0; m <= m_max; ++m) {
    const auto p_seq = legendre_P_half_sequence_scaled(n_max, m, t1.beta);
    LookbackSum inner(tol);
    for (int n = 0; n <= n_max; ++n) {
      // Q^{-m} = (-1)^m Gamma(n-m+1/2)/Gamma(n+m+1/2) Q^m
      const ScaledReal q_neg = legendre_Q_half_scaled(n, m, t2.beta).value * gamma_half_scaled(n - m) /
                               gamma_half_scaled(n + m) * ScaledReal((m & 1) ? -1.0 : 1.0);
      const double term = (p_seq[n] * q_neg).to_double() * (n == 0 ? 1.0 : 2.0) * std::cos(n * deta);
      if (inner.add(term)) break;
    }
    inner_ok = inner_ok && inner.done();
    inner_error += inner.result(1.0).est_error;
    if (outer.add((m == 0 ? 1.0 : 2.0) * std::cos(m * dphi) * inner.sum())) break;
  }
  const double scale = t1.delta * t2.delta / (2.0 * kPi * pp.a);
  EvalResult r = outer.result(scale);
  r.converged = r.converged && inner_ok;
  r.est_error += std::fabs(scale) * inner_error;
  if (!r.converged) r.status = SeriesStatus::Slow;
  return r;
}

EvalResult green_cylindrical(const PointPair& pp, int m_max, double tol) {
  check_distinct(pp);
  if (m_max < 0) throw Error(ErrorKind::InvalidArgument, "m_max must be >= 0");
  const double rho1 = std::hypot(pp.p1.x, pp.p1.y), rho2 = std::hypot(pp.p2.x, pp.p2.y);
  if (rho1 == 0.0 || rho2 == 0.0) throw Error(ErrorKind::AxisPoint, "cylindrical series needs rho > 0");
  const double chi = mixed_chi(pp, rho1, rho2);
  const double dphi = std::atan2(pp.p1.y, pp.p1.x) - std::atan2(pp.p2.y, pp.p2.x);
  LookbackSum acc(tol);
  for (int m = 0; m <= m_max; ++m) {
    const double term = (m == 0 ? 1.0 : 2.0) * legendre_Q_half_scaled(m, 0, chi).value.to_double() *
                        std::cos(m * dphi);
    if (acc.add(term)) break;
  }
  return acc.result(1.0 / (kPi * std::sqrt(rho1 * rho2)));
}

std::vector<double> green_cylindrical_m_terms(const PointPair& pp, int m_max) {
  check_distinct(pp);
  const double rho1 = std::hypot(pp.p1.x, pp.p1.y), rho2 = std::hypot(pp.p2.x, pp.p2.y);
  if (rho1 == 0.0 || rho2 == 0.0) throw Error(ErrorKind::AxisPoint, "cylindrical series needs rho > 0");
  const double chi = mixed_chi(pp, rho1, rho2);
  const double dphi = std::atan2(pp.p1.y, pp.p1.x) - std::atan2(pp.p2.y, pp.p2.x);
  std::vector<double> out(m_max + 1);
  for (int m = 0; m <= m_max; ++m) {
    out[m] = (m == 0 ? 1.0 : 2.0) * legendre_Q_half_scaled(m, 0, chi).value.to_double() * std::cos(m * dphi) /
             (kPi * std::sqrt(rho1 * rho2));
  }
  return out;
}

}  // namespace torharm
