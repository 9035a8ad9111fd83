#pragma once

#include <vector>

#include "torharm/coords.hpp"
#include "torharm/eval_result.hpp"

namespace torharm {

struct PointPair {
  CartesianPoint p1;
  CartesianPoint p2;
  double a = 1.0;  // focal radius for the toroidal expansion
};

/// 1 / |p1 - p2|. Throws CoincidentPoints.
double green_direct(const PointPair& pp);

// The three series below stop once three consecutive terms fall below
// tol * |sum| (parity zeros make single-term tests unreliable); the integer
// arguments are caps. Points are ordered internally, so swapping p1 and p2
// gives the same result.

/// Spherical-harmonic series in r_< / r_>.
EvalResult green_spherical(const PointPair& pp, int n_max, double tol = 1e-15);

/// Double series in toroidal harmonics, P at the point farther from the focal
/// ring and Q at the nearer one.
EvalResult green_toroidal(const PointPair& pp, int n_max, int m_max, double tol = 1e-15);

/// Series in Q_{m-1/2} of the mixed argument; needs both points off the axis.
EvalResult green_cylindrical(const PointPair& pp, int m_max, double tol = 1e-15);

/// Azimuthal terms (index m, including the Neumann factor and cos m(phi1-phi2))
/// of the spherical and cylindrical series, for term-by-term comparison.
std::vector<double> green_spherical_m_terms(const PointPair& pp, int n_max, int m_max);
std::vector<double> green_cylindrical_m_terms(const PointPair& pp, int m_max);

}  // namespace torharm
