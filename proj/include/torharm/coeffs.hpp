#pragma once

#include <string>
#include <vector>

#include "torharm/scaled_real.hpp"

namespace torharm {

/// Coefficients of the expansion of ring harmonics of azimuthal order m in
/// solid spherical harmonics. n is the toroidal order, k the spherical degree.
///
/// C, S follow C_{n+1,k} = (2k+1) C_{nk} + ((n-1/2)^2 - m^2) C_{n-1,k} from
/// C_0 = 1, C_1 = k + 1/2 (S: S_0 = 0, S_1 = k + m + 1). The normalized
/// c, s are sqrt(pi)/Gamma(n-m+1/2) times C, S. Entries are stored with a
/// separate binary exponent so that large n_max does not overflow.
class CoeffTable {
 public:
  CoeffTable() = default;
  CoeffTable(int m, int n_max, int k_max);

  int m() const { return m_; }
  int n_max() const { return n_max_; }
  int k_max() const { return k_max_; }

  const ScaledReal& C(int n, int k) const { return C_[index(n, k)]; }
  const ScaledReal& S(int n, int k) const { return S_[index(n, k)]; }
  const ScaledReal& c(int n, int k) const { return c_[index(n, k)]; }
  const ScaledReal& s(int n, int k) const { return s_[index(n, k)]; }

  ScaledReal& C(int n, int k) { return C_[index(n, k)]; }
  ScaledReal& S(int n, int k) { return S_[index(n, k)]; }
  ScaledReal& c(int n, int k) { return c_[index(n, k)]; }
  ScaledReal& s(int n, int k) { return s_[index(n, k)]; }

  bool in_range(int n, int k) const { return n >= 0 && n <= n_max_ && k >= 0 && k <= k_max_; }

  friend bool operator==(const CoeffTable&, const CoeffTable&) = default;

 private:
  std::size_t index(int n, int k) const;

  int m_ = 0;
  int n_max_ = 0;
  int k_max_ = 0;
  std::vector<ScaledReal> C_, S_, c_, s_;
};

/// Builds C, S, c, s by forward recurrence in n.
CoeffTable build_table(int m, int n_max, int k_max);

/// Fills c, s from C, S; used after importing a table that carries only C, S.
void normalize_table(CoeffTable& table);

double coeff_c(const CoeffTable& table, int n, int k);
double coeff_s(const CoeffTable& table, int n, int k);

struct NegOrderCoeffs {
  double c = 0.0;
  double s = 0.0;
};

/// Normalized coefficients of order -m from the order-m table:
///   c^{-m}_{nk} = Gamma(n-m+1/2)/Gamma(n+m+1/2) c^m_{nk}
///   s^{-m}_{nk} = the same ratio times (k-m+1)/(k+m+1) times s^m_{nk}
/// with n the toroidal order and k the spherical degree.
NegOrderCoeffs coeff_neg_m(const CoeffTable& table, int n, int k);
ScaledReal coeff_neg_m_c_scaled(const CoeffTable& table, int n, int k);
ScaledReal coeff_neg_m_s_scaled(const CoeffTable& table, int n, int k);

/// Residual of the triangular recurrence linking neighbouring n and k through
/// h_{nk} = (-1)^k [c_{nk} P_k^{-m}(0) + i s_{nk} P_{k+1}^{-m}(0)], divided by
/// the largest of the four terms. Needs 1 <= n < n_max and 1 <= k <= k_max;
/// n = 0 has no lower neighbour and is rejected.
double erofeenko_residual(const CoeffTable& table, int n, int k);

/// JSON form {"m", "n_max", "k_max", "C", "S"}, plus "c" and "s" when
/// normalized is set. Throws Overflow if an entry does not fit a double.
std::string coeffs_to_json(const CoeffTable& table, bool normalized, int indent = -1);

/// Inverse of coeffs_to_json. c, s are recomputed when absent.
CoeffTable coeffs_from_json(const std::string& text);

}  // namespace torharm
