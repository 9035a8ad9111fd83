#pragma once

// Test-only reference for P and Q of half-integer degree: the textbook
// hypergeometric series written term by term in 50-digit arithmetic, with
// gamma and double factorials taken from Boost rather than the library.

#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

namespace oracle {

using Big = boost::multiprecision::cpp_bin_float_50;

inline Big dfact(int n) {
  Big r = 1;
  for (int j = n; j > 1; j -= 2) r *= j;
  return r;
}

inline Big fact(int n) {
  Big r = 1;
  for (int j = 2; j <= n; ++j) r *= j;
  return r;
}

// P_{n-1/2}^m(x), x >= 1
inline double legendre_p_half(int n, int m, double xd, int min_terms = 300) {
  const Big x = xd;
  const Big t = (x - 1) / (x + 1);
  const Big pi = boost::math::constants::pi<Big>();
  // k = 0 term from the factorials, later terms by exact ratio of the
  // factorial expression
  Big term = dfact(2 * (n + m) - 1) * dfact(2 * n - 1) / (fact(m) * pow(Big(2), m));
  Big sum = term;
  for (int k = 1; k < 400000; ++k) {
    term *= Big(2 * (n + m + k) - 1) * Big(2 * (n + k) - 1) * t / (Big(k) * Big(m + k) * 4);
    sum += term;
    if (k >= min_terms && term < sum * Big("1e-25")) break;
  }
  const Big gam = boost::math::tgamma(Big(n - m) + Big(0.5));
  const Big pre = sqrt(2 * pi) * pow(x * x - 1, Big(m) / 2) * pow(x + 1, -Big(n + m) - Big(0.5)) /
                  (gam * dfact(2 * n - 1));
  return static_cast<double>(pre * sum);
}

// Q_{n-1/2}^m(x), x > 1
inline double legendre_q_half(int n, int m, double xd, int min_terms = 300) {
  const Big x = xd;
  const Big pi = boost::math::constants::pi<Big>();
  const Big w = 1 / (2 * x);
  Big term = dfact(2 * n + 2 * m - 1) / dfact(2 * n);
  Big sum = term;
  for (int k = 1; k < 400000; ++k) {
    term *= Big(4 * k + 2 * n + 2 * m - 3) * Big(4 * k + 2 * n + 2 * m - 1) * w * w /
            (Big(2 * k) * Big(2 * k + 2 * n));
    sum += term;
    if (k >= min_terms && term < sum * Big("1e-25")) break;
  }
  const Big sign = (m & 1) ? -1 : 1;
  return static_cast<double>(sign * pi * pow(x * x - 1, Big(m) / 2) * pow(w, Big(n + m) + Big(0.5)) *
                             sum);
}

}  // namespace oracle
