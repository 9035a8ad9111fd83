#include <doctest.h>

#include <bit>
#include <cmath>
#include <random>
#include <vector>

#include "torharm/simd/kernels.hpp"
#include "torharm/special.hpp"

using namespace torharm;
using namespace torharm::simd;

namespace {

bool same_bits(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (std::bit_cast<std::uint64_t>(x[i]) != std::bit_cast<std::uint64_t>(y[i])) return false;
  }
  return true;
}

std::vector<double> random_coefficients(std::mt19937_64& rng, int count, double decay) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  std::vector<double> c(count);
  for (int k = 0; k < count; ++k) c[k] = d(rng) * std::pow(decay, k);
  return c;
}

struct ToroidalInputs {
  std::vector<double> beta, pm, ph, ce;
};

ToroidalInputs toroidal_inputs(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> b(1.0, 4.0), e(-3.14, 3.14);
  ToroidalInputs in;
  for (std::size_t i = 0; i < n; ++i) {
    const double beta = b(rng);
    in.beta.push_back(beta);
    in.pm.push_back(legendre_P_half(0, 0, beta).value);
    in.ph.push_back(legendre_P_half(1, 0, beta).value);
    in.ce.push_back(std::cos(e(rng)));
  }
  return in;
}

}  // namespace

TEST_CASE("spherical kernel matches a direct Legendre sum") {
  std::mt19937_64 rng(7);
  const auto coef = random_coefficients(rng, 61, 0.8);
  const ZonalSphericalPlan plan(coef);
  const std::vector<double> q = {0.0, 0.3, 0.7, 0.95}, u = {0.2, -1.0, 0.5, 1.0};
  SeriesBatch out(q.size());
  scalar::zonal_spherical(plan, q, u, out);
  for (std::size_t i = 0; i < q.size(); ++i) {
    double want = 0.0;
    for (int k = 0; k < 61; ++k) want += coef[k] * std::pow(q[i], k) * std::legendre(k, u[i]);
    CHECK(out.value[i] == doctest::Approx(want).epsilon(1e-13));
  }
}

TEST_CASE("toroidal kernel matches per-order series") {
  const std::vector<double> w = {1.0, -0.5, 0.25, 0.125, -0.0625, 0.03, 0.01};
  const ZonalToroidalPlan plan(w);
  std::mt19937_64 rng(11);
  const auto in = toroidal_inputs(rng, 5);
  SeriesBatch out(5);
  scalar::zonal_toroidal(plan, in.beta, in.pm, in.ph, in.ce, out);
  for (std::size_t i = 0; i < 5; ++i) {
    const double eta = std::acos(in.ce[i]);
    double want = 0.0;
    for (int n = 0; n < static_cast<int>(w.size()); ++n) {
      want += w[n] * legendre_P_half(n, 0, in.beta[i]).value * std::cos(n * eta);
    }
    CHECK(out.value[i] == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("tail windows separate converging from growing series") {
  std::vector<double> coef(80, 1.0);
  const ZonalSphericalPlan plan(coef);
  const std::vector<double> q = {0.5, 1.2}, u = {1.0, 1.0};
  SeriesBatch out(2);
  scalar::zonal_spherical(plan, q, u, out);
  CHECK(out.last[0] < out.prev[0]);
  CHECK(out.last[1] > out.prev[1]);
  // largest term of each window at u = 1
  CHECK(out.last[0] == doctest::Approx(std::pow(0.5, 60)));
  CHECK(out.prev[0] == doctest::Approx(std::pow(0.5, 40)));
}

TEST_CASE("AVX2 kernels are bitwise equal to scalar kernels") {
  if (!avx2::available()) {
    MESSAGE("AVX2 not available on this CPU; equivalence not exercised");
    return;
  }
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> qd(0.0, 1.3), ud(-1.0, 1.0);
  for (std::size_t n : {1u, 3u, 4u, 5u, 8u, 13u, 64u, 257u}) {
    CAPTURE(n);
    const ZonalSphericalPlan sp(random_coefficients(rng, 171, 0.9));
    std::vector<double> q(n), u(n);
    for (std::size_t i = 0; i < n; ++i) {
      q[i] = qd(rng);
      u[i] = ud(rng);
    }
    SeriesBatch a(n), b(n);
    scalar::zonal_spherical(sp, q, u, a);
    avx2::zonal_spherical(sp, q, u, b);
    CHECK(same_bits(a.value, b.value));
    CHECK(same_bits(a.last, b.last));
    CHECK(same_bits(a.prev, b.prev));

    const ZonalToroidalPlan tp(random_coefficients(rng, 121, 0.5));
    const auto in = toroidal_inputs(rng, n);
    SeriesBatch c(n), d(n);
    scalar::zonal_toroidal(tp, in.beta, in.pm, in.ph, in.ce, c);
    avx2::zonal_toroidal(tp, in.beta, in.pm, in.ph, in.ce, d);
    CHECK(same_bits(c.value, d.value));
    CHECK(same_bits(c.last, d.last));
    CHECK(same_bits(c.prev, d.prev));
  }
}

TEST_CASE("dispatch honours forced ISA and reports names") {
  const Isa before = active_isa();
  force_isa(Isa::Scalar);
  CHECK(active_isa() == Isa::Scalar);
  force_isa(Isa::Avx2);
  CHECK(active_isa() == (avx2::available() ? Isa::Avx2 : Isa::Scalar));
  force_isa(before);
  CHECK(std::string(to_string(Isa::Scalar)) == "scalar");
  CHECK(std::string(to_string(Isa::Avx2)) == "avx2");
}

TEST_CASE("kernels reject mismatched spans") {
  const ZonalSphericalPlan plan(std::vector<double>{1.0, 2.0});
  const std::vector<double> q(3, 0.1), u(2, 0.0);
  SeriesBatch out(3);
  CHECK_THROWS(zonal_spherical(plan, q, u, out));
}
