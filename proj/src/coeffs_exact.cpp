#include "torharm/coeffs_exact.hpp"

#include "torharm/errors.hpp"

namespace torharm {

namespace {

Rational odd_double_factorial(int n) {
  Rational r = 1;
  for (int j = n; j > 1; j -= 2) r *= j;
  return r;
}

}  // namespace

Rational sqrt_pi_over_gamma_half(int j) {
  if (j >= 0) {
    // 2^j / (2j-1)!!
    return Rational(boost::multiprecision::cpp_int(1) << j) / odd_double_factorial(2 * j - 1);
  }
  const int n = -j;
  Rational r = odd_double_factorial(2 * n - 1) / Rational(boost::multiprecision::cpp_int(1) << n);
  return (n & 1) ? -r : r;
}

ExactCoeffTable build_table_exact(int m, int n_max, int k_max) {
  if (m < 0 || n_max < 1 || k_max < 1) throw Error(ErrorKind::InvalidArgument, "bad table dimensions");
  ExactCoeffTable t;
  t.m = m;
  t.n_max = n_max;
  t.k_max = k_max;
  const std::size_t size = static_cast<std::size_t>(n_max + 1) * (k_max + 1);
  t.C.assign(size, 0);
  t.S.assign(size, 0);
  t.c.assign(size, 0);
  t.s.assign(size, 0);
  auto idx = [&](int n, int k) { return static_cast<std::size_t>(n) * (k_max + 1) + k; };
  const Rational half(1, 2);

  for (int k = 0; k <= k_max; ++k) {
    t.C[idx(0, k)] = 1;
    t.C[idx(1, k)] = Rational(k) + half;
    t.S[idx(1, k)] = k + m + 1;
    for (int n = 1; n < n_max; ++n) {
      const Rational w = (Rational(n) - half) * (Rational(n) - half) - m * m;
      t.C[idx(n + 1, k)] = (2 * k + 1) * t.C[idx(n, k)] + w * t.C[idx(n - 1, k)];
      t.S[idx(n + 1, k)] = (2 * k + 1) * t.S[idx(n, k)] + w * t.S[idx(n - 1, k)];
    }
  }
  for (int n = 0; n <= n_max; ++n) {
    const Rational f = sqrt_pi_over_gamma_half(n - m);
    for (int k = 0; k <= k_max; ++k) {
      t.c[idx(n, k)] = f * t.C[idx(n, k)];
      t.s[idx(n, k)] = f * t.S[idx(n, k)];
    }
  }
  return t;
}

}  // namespace torharm
