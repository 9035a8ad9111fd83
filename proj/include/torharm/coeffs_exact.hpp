#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

namespace torharm {

using Rational = boost::multiprecision::cpp_rational;

/// Exact rational version of the coefficient recurrence, for small tables.
/// Same layout as CoeffTable: entry (n, k) at n * (k_max + 1) + k.
struct ExactCoeffTable {
  int m = 0;
  int n_max = 0;
  int k_max = 0;
  std::vector<Rational> C, S, c, s;

  const Rational& at(const std::vector<Rational>& v, int n, int k) const {
    return v[static_cast<std::size_t>(n) * (k_max + 1) + k];
  }
};

ExactCoeffTable build_table_exact(int m, int n_max, int k_max);

/// sqrt(pi) / Gamma(j + 1/2), which is rational for every integer j.
Rational sqrt_pi_over_gamma_half(int j);

}  // namespace torharm
