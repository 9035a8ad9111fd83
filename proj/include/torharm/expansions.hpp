#pragma once

#include "torharm/coeffs.hpp"
#include "torharm/coords.hpp"
#include "torharm/eval_result.hpp"
#include "torharm/special.hpp"

namespace torharm {

enum class Regularity { Regular, Irregular };

inline constexpr int kDefaultTermCap = 512;

struct Truncation {
  int k_max = 0;
  bool capped = false;  // envelope never fell below tol before the cap
};

/// Number of toroidal terms needed for spherical_via_toroidal at xi, from the
/// envelope sqrt(pi) e^{-k xi} (k+1)^{2n+1+m} / sqrt((2k-1) sinh xi).
Truncation truncation_estimate(double xi, int n, int m, double tol, int cap = kDefaultTermCap);

/// Number of spherical terms needed for ring_via_spherical when the radial
/// ratio is q (r/a inside, a/r outside), from the envelope q^k (k+1)^{2n+1+m}.
Truncation spherical_truncation_estimate(double q, int n, int m, double tol,
                                         int cap = kDefaultTermCap);

/// Standard ring harmonic Delta P_{n-1/2}^m(beta) trig(n eta) cos(m phi) summed
/// as a series of solid spherical harmonics, regular for r < a and irregular
/// for r > a. k_max <= 0 picks the truncation automatically. The table
/// overload reuses coefficients; it must have order m and cover n and k_max.
EvalResult ring_via_spherical(int n, int m, Parity parity, const CartesianPoint& p, double a,
                              int k_max, double tol = 1e-12);
EvalResult ring_via_spherical(const CoeffTable& table, int n, Parity parity, const CartesianPoint& p,
                              double a, int k_max, double tol = 1e-12);

/// Any ring harmonic through its spherical series; the alternate family is
/// obtained from the standard one by the Whipple factor. Axial harmonics have
/// no such expansion and raise NoExpansion.
EvalResult harmonic_via_spherical(const HarmonicSpec& spec, const CartesianPoint& p, double a,
                                  int k_max, double tol = 1e-12);

/// (r/a)^n P_n^m(u) (regular) or (a/r)^{n+1} P_n^m(u) (irregular) summed as a
/// series of axial toroidal harmonics up to toroidal order k_max (k_max <= 0:
/// from truncation_estimate). No azimuthal factor is included. The
/// cancellation field of the result is max |partial sum| / |sum|.
EvalResult spherical_via_toroidal(int n, int m, Regularity regularity, const CartesianPoint& p,
                                  double a, int k_max, double tol = 1e-12);

enum class SeriesKind { RingInSphericalInner, RingInSphericalOuter, SphericalInToroidal };
enum class Region { Converges, Diverges, Boundary };

const char* to_string(Region region) noexcept;

/// Where each series converges: inner iff r < a, outer iff r > a, toroidal
/// iff 0 < xi < infinity. Points within 1e-9 a of the sphere r = a (and the
/// focal ring for the toroidal series) are reported as Boundary.
Region convergence_region(SeriesKind kind, const CartesianPoint& p, double a);

}  // namespace torharm
