#pragma once

#include <span>
#include <vector>

#include "torharm/coords.hpp"
#include "torharm/eval_result.hpp"
#include "torharm/scaled_real.hpp"

namespace torharm {

enum class Family { Standard, Alternate };
enum class Kind { Ring, Axial };
enum class Parity { Cos, Sin };

/// One solid toroidal harmonic. n is the toroidal order (the eta frequency),
/// m the azimuthal order. The azimuthal factor is always cos(m phi).
struct HarmonicSpec {
  Family family = Family::Standard;
  Kind kind = Kind::Ring;
  Parity parity = Parity::Cos;
  int n = 0;
  int m = 0;
};

// ---------------------------------------------------------------------------
// Elementary pieces

/// n!! extended to n = 0, -1 (both 1) and to negative odd n through
/// (n)!! = (n+2)!! / (n+2).
double double_factorial(int n);
ScaledReal double_factorial_scaled(int n);

enum class HalfSign { Plus, Minus };

/// Gamma(n + 1/2) for sign Plus, Gamma(-n + 1/2) for sign Minus; n >= 0.
double gamma_half(int n, HalfSign sign);

/// Gamma(j + 1/2) for any integer j.
ScaledReal gamma_half_scaled(int j);

/// Associated Legendre function P_n^m(u) on [-1, 1] without the Condon-Shortley
/// phase. Negative m uses P_n^{-m} = (-1)^m (n-m)!/(n+m)! P_n^m.
double assoc_legendre(int n, int m, double u);

/// Fills out[k] = P_k^m(u) for k = 0..out.size()-1 (zero for k < m), m >= 0.
void assoc_legendre_column(int m, double u, std::span<double> out);

/// Same as assoc_legendre_column but scaled by sqrt((k-m)!/(k+m)!), which keeps
/// values O(1) for large m.
void assoc_legendre_column_normalized(int m, double u, std::span<double> out);

/// P_k^{-m}(0).
double legendre_zero(int k, int m);

// ---------------------------------------------------------------------------
// Toroidal functions: Legendre functions of half-integer degree n - 1/2 and
// integer order m, for real argument x > 1.

struct SeriesOptions {
  double tol = 1e-15;
  long max_terms = 2'000'000;
  // Skip the double pass and sum in 50-digit arithmetic directly.
  bool force_extended = false;
};

struct ScaledEval {
  ScaledReal value;
  bool converged = false;
  int terms_used = 0;
  double rel_error = 0.0;
  bool used_extended = false;
};

/// P_{n-1/2}^m(x) from its hypergeometric series in (x-1)/(x+1). Valid for
/// x >= 1.
EvalResult legendre_P_half(int n, int m, double x, double tol = 1e-15);
ScaledEval legendre_P_half_scaled(int n, int m, double x, const SeriesOptions& opt = {});

/// Q_{n-1/2}^m(x) from its series in 1/(2x)^2. Includes the (-1)^m factor.
/// Throws TooCloseToSingularity at x = 1, or when x - 1 < 1e-6 and the series
/// cannot be summed.
EvalResult legendre_Q_half(int n, int m, double x, double tol = 1e-15);
ScaledEval legendre_Q_half_scaled(int n, int m, double x, const SeriesOptions& opt = {});

/// P_{n-1/2}^m(x) for n = 0..n_max by the forward degree recurrence, which is
/// stable for P. Orders n <= m+1 are taken from the series directly.
std::vector<ScaledReal> legendre_P_half_sequence_scaled(int n_max, int m, double x);
std::vector<double> legendre_P_half_sequence(int n_max, int m, double x);

// ---------------------------------------------------------------------------
// Harmonics

/// Value of a solid toroidal harmonic at t:
///   standard ring    Delta P_{n-1/2}^m(beta) trig(n eta) cos(m phi)
///   standard axial   Delta Q_{n-1/2}^m(beta) trig(n eta) cos(m phi)
///   alternate ring   sqrt(a/rho) Q_{m-1/2}^n(chi) trig(n eta) cos(m phi)
///   alternate axial  sqrt(a/rho) P_{m-1/2}^n(chi) trig(n eta) cos(m phi)
/// Alternate harmonics throw AxisPoint on rho = 0.
EvalResult harmonic_eval(const HarmonicSpec& spec, const ToroidalPoint& t, double a,
                         double tol = 1e-15);

/// Standard ring harmonic with n = 0 from adaptive quadrature of the azimuthal
/// integral over a ring of charge with density cos(m phi'). Independent of the
/// series code; used as a cross-check. Throws QuadratureFailure when the
/// error estimate stays above tol.
double oracle_ring_integral(int m, const CartesianPoint& p, double a, double tol = 1e-12);

}  // namespace torharm
