#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles/oracle_c.hpp"
#include "torharm/errors.hpp"
#include "torharm/special.hpp"

using namespace torharm;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

struct Fixture {
  int n, m;
  double x, value;
};

// Reference values computed once with an independent arbitrary-precision
// implementation (hypergeometric representation, 30 digits).
const Fixture kP[] = {
    {2, 1, 1.8, 3.6718325275372250813},     {0, 0, 1.5, 0.945006330929758054},
    {1, 0, 1.5, 1.1746724294455385146},     {0, 1, 1.3, -0.088684872257643241724},
    {3, 2, 2.5, 60.070675708326717507},     {1, 3, 1.4, 0.057858767494873832289},
    {5, 0, 3, 732.96131280272493122},       {8, 8, 1.1, 527.97188684618185074},
    {8, 3, 10, 304599165599.30824553},      {0, 4, 1.05, 0.0010661516885939515448},
    {12, 2, 4, 402668150252.50885377},
};

const Fixture kQ[] = {
    {1, 2, 1.25, 4.0458276947893931236},     {0, 0, 1.5, 2.0189058199784232156},
    {1, 0, 1.5, 0.39317514837200473104},     {0, 1, 1.3, -1.4572514751299570939},
    {3, 2, 2.5, 0.068496500320103786172},    {1, 3, 1.4, -13.461770284607729652},
    {5, 0, 3, 4.8268030482453372046e-5},     {8, 8, 1.1, 314849800.69644658049},
    {2, 5, 1.01, -6841224.4058350358819},    {20, 0, 1.2, 1.3370297957803582861e-6},
    {0, 0, 1.001, 5.1862223889747289859},
};

double rel(double got, double want) { return std::fabs(got - want) / std::fabs(want); }

}  // namespace

TEST_CASE("double factorial and half-integer gamma") {
  CHECK(double_factorial(-1) == 1.0);
  CHECK(double_factorial(0) == 1.0);
  CHECK(double_factorial(7) == 105.0);
  CHECK(double_factorial(8) == 384.0);
  CHECK(double_factorial(-3) == -1.0);
  CHECK(double_factorial(-5) == Approx(1.0 / 3.0));

  CHECK(gamma_half(0, HalfSign::Plus) == Approx(std::sqrt(kPi)).epsilon(1e-15));
  CHECK(gamma_half(2, HalfSign::Plus) == Approx(3 * std::sqrt(kPi) / 4).epsilon(1e-15));
  CHECK(gamma_half(2, HalfSign::Minus) == Approx(4 * std::sqrt(kPi) / 3).epsilon(1e-15));
  for (int j = -15; j <= 15; ++j) {
    CHECK(gamma_half_scaled(j).to_double() == Approx(std::tgamma(j + 0.5)).epsilon(1e-13));
  }
  CHECK(gamma_half_scaled(400).log_abs() == Approx(std::lgamma(400.5)).epsilon(1e-13));
}

TEST_CASE("associated Legendre without the phase factor") {
  CHECK(assoc_legendre(1, 0, 0.3) == Approx(0.3));
  CHECK(assoc_legendre(2, 0, 0.5) == Approx(-0.125));
  CHECK(assoc_legendre(1, 1, 0.6) == Approx(0.8));
  CHECK(assoc_legendre(3, 5, 0.2) == 0.0);
  for (int n = 0; n <= 12; ++n) {
    for (int m = 0; m <= n; ++m) {
      for (double u : {-0.9, -0.2, 0.0, 0.45, 1.0}) {
        const double csphase = (m & 1) ? -1.0 : 1.0;
        // std::assoc_legendre also omits the phase
        CHECK(assoc_legendre(n, m, u) ==
              Approx(std::assoc_legendre(n, m, u)).epsilon(1e-12).scale(1.0));
        double ratio = 1;
        for (int j = n - m + 1; j <= n + m; ++j) ratio /= j;
        CHECK(assoc_legendre(n, -m, u) ==
              Approx(csphase * ratio * assoc_legendre(n, m, u)).epsilon(1e-14).scale(1e-300));
      }
    }
  }
}

TEST_CASE("normalized Legendre column matches the scaled plain column") {
  std::vector<double> plain(31), norm(31);
  for (int m : {0, 1, 3, 7}) {
    assoc_legendre_column(m, 0.37, plain);
    assoc_legendre_column_normalized(m, 0.37, norm);
    for (int k = m; k <= 30; ++k) {
      double ratio = 1;
      for (int j = k - m + 1; j <= k + m; ++j) ratio /= j;
      CHECK(norm[k] == Approx(plain[k] * std::sqrt(ratio)).epsilon(1e-12).scale(1e-12));
    }
  }
}

TEST_CASE("Legendre values at zero") {
  CHECK(legendre_zero(0, 0) == 1.0);
  CHECK(legendre_zero(1, 0) == 0.0);
  CHECK(legendre_zero(2, 0) == -0.5);
  for (int k = 0; k <= 15; ++k)
    for (int m = 0; m <= k; ++m)
      CHECK(legendre_zero(k, m) == Approx(assoc_legendre(k, -m, 0.0)).epsilon(1e-13).scale(1e-14));
}

TEST_CASE("P of half-integer degree against frozen references") {
  for (const auto& f : kP) {
    CAPTURE(f.n);
    CAPTURE(f.m);
    CAPTURE(f.x);
    const auto r = legendre_P_half(f.n, f.m, f.x);
    CHECK(r.converged);
    CHECK(rel(r.value, f.value) < 1e-13);
    CHECK(r.est_error >= 0.0);
  }
}

TEST_CASE("Q of half-integer degree against frozen references") {
  for (const auto& f : kQ) {
    CAPTURE(f.n);
    CAPTURE(f.m);
    CAPTURE(f.x);
    const auto r = legendre_Q_half(f.n, f.m, f.x);
    CHECK(r.converged);
    CHECK(rel(r.value, f.value) < 1e-12);
  }
}

TEST_CASE("P and Q against the extended-precision series oracle") {
  CHECK(rel(legendre_P_half(2, 1, 1.8).value, oracle::legendre_p_half(2, 1, 1.8)) < 1e-14);
  CHECK(rel(legendre_Q_half(1, 2, 1.25).value, oracle::legendre_q_half(1, 2, 1.25)) < 1e-14);
  for (int n = 0; n <= 10; n += 2) {
    for (int m = 0; m <= 6; m += 3) {
      for (double x : {1.0001, 1.02, 1.3, 2.0, 7.5, 60.0}) {
        CAPTURE(n);
        CAPTURE(m);
        CAPTURE(x);
        CHECK(rel(legendre_P_half(n, m, x).value, oracle::legendre_p_half(n, m, x)) < 1e-12);
        CHECK(rel(legendre_Q_half(n, m, x).value, oracle::legendre_q_half(n, m, x)) < 1e-12);
      }
    }
  }
}

TEST_CASE("extended fallback agrees with the double pass") {
  SeriesOptions ext;
  ext.force_extended = true;
  for (double x : {1.001, 1.5, 4.0}) {
    const auto d = legendre_Q_half_scaled(3, 2, x);
    const auto e = legendre_Q_half_scaled(3, 2, x, ext);
    CHECK(e.used_extended);
    CHECK(rel(d.value.to_double(), e.value.to_double()) < 1e-13);
    const auto pd = legendre_P_half_scaled(3, 2, x);
    const auto pe = legendre_P_half_scaled(3, 2, x, ext);
    CHECK(rel(pd.value.to_double(), pe.value.to_double()) < 1e-13);
  }
}

TEST_CASE("limits at x = 1 and x -> infinity") {
  CHECK(legendre_P_half(0, 0, 1.0).value == Approx(1.0).epsilon(1e-15));
  CHECK(legendre_P_half(0, 0, 1.0 + 1e-12).value == Approx(1.0).epsilon(1e-11));
  CHECK(legendre_P_half(4, 2, 1.0).value == 0.0);
  const double x = 1e8;
  CHECK(legendre_Q_half(0, 0, x).value * std::sqrt(2 * x) == Approx(kPi).epsilon(1e-12));
}

TEST_CASE("Q is rejected at or below 1") {
  try {
    legendre_Q_half(0, 0, 1.0);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::TooCloseToSingularity);
  }
  CHECK_THROWS_AS(legendre_P_half(0, 0, 0.5), Error);
  CHECK_THROWS_AS(legendre_P_half(-1, 0, 2.0), Error);
}

TEST_CASE("Q just above 1 is summed with the iteration cap reported") {
  SeriesOptions opt;
  opt.max_terms = 1000;
  CHECK_THROWS_AS(legendre_Q_half_scaled(0, 0, 1.0 + 1e-8, opt), Error);
  opt.max_terms = 10;
  const auto slow = legendre_Q_half_scaled(0, 0, 1.1, opt);
  CHECK_FALSE(slow.converged);
}

TEST_CASE("growth and decay laws for large order") {
  const double xi = 0.5, b = std::cosh(xi);
  const int n = 200;
  const double envelope = std::exp(n * xi) / std::sqrt((2.0 * n - 1) * std::sinh(xi));
  // the growing solution carries an extra 1/sqrt(pi) relative to the decaying one
  const double p = legendre_P_half_scaled(n, 0, b).value.to_double();
  CHECK(p / (envelope / std::sqrt(kPi)) == Approx(1.0).epsilon(0.02));
  const double q = legendre_Q_half_scaled(n, 0, b).value.to_double();
  const double q_env = std::sqrt(kPi) * std::exp(-n * xi) / std::sqrt((2.0 * n - 1) * std::sinh(xi));
  CHECK(q / q_env == Approx(1.0).epsilon(0.02));
}

TEST_CASE("forward degree recurrence reproduces per-order series") {
  for (int m = 0; m <= 5; ++m) {
    for (double x : {1.2, 1.7, 2.5, 3.6, 5.0}) {
      const auto seq = legendre_P_half_sequence_scaled(30, m, x);
      for (int n = 0; n <= 30; ++n) {
        const double direct = legendre_P_half_scaled(n, m, x).value.to_double();
        CAPTURE(n);
        CAPTURE(m);
        CAPTURE(x);
        CHECK(rel(seq[n].to_double(), direct) < 1e-11);
      }
    }
  }
}

TEST_CASE("Whipple identities on the beta grid") {
  const double a = 1.3;
  for (double beta : {1.1, 1.5, 3.0, 10.0}) {
    const auto t = from_toroidal(std::acosh(beta), 0.7, 0.4, a);
    for (int n = 0; n <= 8; ++n) {
      for (int m = 0; m <= 8; ++m) {
        const double g = 1.0 / gamma_half_scaled(n - m).to_double();
        const double sgn = (n & 1) ? -1.0 : 1.0;
        HarmonicSpec s{Family::Standard, Kind::Ring, Parity::Cos, n, m};
        HarmonicSpec alt = s;
        alt.family = Family::Alternate;
        const double std_ring = harmonic_eval(s, t, a).value;
        const double alt_ring = harmonic_eval(alt, t, a).value;
        CAPTURE(beta);
        CAPTURE(n);
        CAPTURE(m);
        CHECK(rel(std_ring, sgn * 2.0 / std::sqrt(kPi) * g * alt_ring) < 1e-10);

        s.kind = alt.kind = Kind::Axial;
        const double std_axial = harmonic_eval(s, t, a).value;
        const double alt_axial = harmonic_eval(alt, t, a).value;
        CHECK(rel(std_axial, sgn * kPi * std::sqrt(kPi) * g * alt_axial) < 1e-10);
      }
    }
  }
}

TEST_CASE("harmonic values: limits, zero sine, axis") {
  const auto origin = to_toroidal({0, 0, 1e-4}, 1.0);
  CHECK(harmonic_eval({}, origin, 1.0).value == Approx(2.0).epsilon(1e-7));
  HarmonicSpec sin0{Family::Standard, Kind::Ring, Parity::Sin, 0, 2};
  const auto r = harmonic_eval(sin0, to_toroidal({0.3, 0.2, 0.1}, 1.0), 1.0);
  CHECK(r.value == 0.0);
  CHECK(r.converged);
  HarmonicSpec alt{Family::Alternate, Kind::Ring, Parity::Cos, 1, 1};
  try {
    harmonic_eval(alt, to_toroidal({0, 0, 0.5}, 1.0), 1.0);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::AxisPoint);
  }
}

TEST_CASE("axial harmonics are finite with the parity of the trig factor") {
  const double a = 0.9;
  for (int n = 0; n <= 4; ++n) {
    for (int m = 0; m <= 3; ++m) {
      for (auto par : {Parity::Cos, Parity::Sin}) {
        HarmonicSpec s{Family::Standard, Kind::Axial, par, n, m};
        const double up = harmonic_eval(s, to_toroidal({0.7, 0.3, 0.4}, a), a).value;
        const double down = harmonic_eval(s, to_toroidal({0.7, 0.3, -0.4}, a), a).value;
        CHECK(std::isfinite(up));
        const double sign = par == Parity::Cos ? 1.0 : -1.0;
        CHECK(down == Approx(sign * up).epsilon(1e-13).scale(1e-300));
      }
    }
  }
}

TEST_CASE("ring-charge quadrature agrees with the series") {
  const double a = 1.0;
  CHECK(oracle_ring_integral(0, {0.7, 0.2, 0.3}, a) ==
        Approx(2.08896756173149669259813864617).epsilon(1e-12));
  CHECK(oracle_ring_integral(1, {0.7, 0.2, 0.3}, a) ==
        Approx(-0.333117730970491324127554798386).epsilon(1e-12));
  CHECK(oracle_ring_integral(2, {0.7, 0.2, 0.3}, a) ==
        Approx(0.211149947145910541096722451852).epsilon(1e-12));
  CHECK(oracle_ring_integral(0, {0, 0, 0.6}, a) == Approx(2 * a / std::sqrt(0.36 + a * a)).epsilon(1e-13));

  const CartesianPoint pts[] = {{2 * a, 0, 0}, {0.5 * a, 0.3 * a, 0.2 * a}, {0.2, -1.1, 0.6}};
  for (const auto& p : pts) {
    for (int m = 0; m <= 2; ++m) {
      HarmonicSpec s{Family::Standard, Kind::Ring, Parity::Cos, 0, m};
      const double series = harmonic_eval(s, to_toroidal(p, a), a).value;
      CHECK(rel(oracle_ring_integral(m, p, a), series) < 1e-10);
    }
  }
  CHECK_THROWS_AS(oracle_ring_integral(0, {1.0, 0, 0}, a), Error);
}

TEST_CASE("ladder operator on solid spherical harmonics by finite differences") {
  // a d/dz [(r/a)^n P_n^m(u)] = (n+m) (r/a)^(n-1) P_(n-1)^m(u), checked with a
  // Richardson-extrapolated central difference
  const double a = 1.4;
  auto solid = [a](int n, int m, double rho, double z) {
    const double r = std::hypot(rho, z);
    return std::pow(r / a, n) * assoc_legendre(n, m, z / r);
  };
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> d(0.2, 1.5);
  for (int trial = 0; trial < 10; ++trial) {
    const double rho = d(rng) * a, z = (d(rng) - 0.8) * a;
    for (int n = 1; n <= 5; ++n) {
      for (int m = 0; m <= n - 1; ++m) {
        const double h = 1e-5 * a;
        auto cd = [&](double step) {
          return (solid(n, m, rho, z + step) - solid(n, m, rho, z - step)) / (2 * step);
        };
        const double deriv = (4 * cd(h / 2) - cd(h)) / 3;
        const double want = (n + m) * solid(n - 1, m, rho, z) / a;
        CHECK(std::fabs(deriv - want) <= 1e-6 * std::max(1.0, std::fabs(want)));
      }
    }
  }
}

TEST_CASE("radial derivative of alternate ring harmonics by finite differences") {
  // r d/dr f_n = (f_{n+1} - f_n + (m^2 - (n-1/2)^2) f_{n-1}) / 2
  const double a = 1.3;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> rd(0.3, 2.5), th(0.2, 2.9);
  auto f = [&](int n, int m, Parity par, double r, double theta) {
    const CartesianPoint p{r * std::sin(theta), 0.0, r * std::cos(theta)};
    return harmonic_eval({Family::Alternate, Kind::Ring, par, n, m}, to_toroidal(p, a), a).value;
  };
  for (int i = 0; i < 10; ++i) {
    const double r = rd(rng), theta = th(rng);
    const int n = 1 + i % 3, m = i % 2;
    const Parity par = i % 4 < 2 ? Parity::Cos : Parity::Sin;
    CAPTURE(r);
    CAPTURE(theta);
    CAPTURE(n);
    const double h = 1e-5 * r;
    const double lhs = r * (f(n, m, par, r + h, theta) - f(n, m, par, r - h, theta)) / (2.0 * h);
    const double rhs = 0.5 * (f(n + 1, m, par, r, theta) - f(n, m, par, r, theta) +
                              (m * m - (n - 0.5) * (n - 0.5)) * f(n - 1, m, par, r, theta));
    const double scale = std::fabs(f(n, m, par, r, theta)) + std::fabs(rhs) + 1e-300;
    CHECK(std::fabs(lhs - rhs) <= 1e-7 * scale);
  }
}
