#pragma once

#include <limits>

namespace torharm {

struct CartesianPoint {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

/// A point in toroidal coordinates (xi, eta, phi) about a focal ring of
/// radius a, with the derived quantities used throughout the library.
///
/// beta = cosh(xi), chi = coth(xi), delta = sqrt(2 (beta - cos eta)).
/// Points on the z-axis (and the limit r -> infinity) have xi = 0; for them
/// chi is +infinity and `on_axis` is set.
struct ToroidalPoint {
  double xi = 0.0;
  double eta = 0.0;
  double phi = 0.0;
  double beta = 1.0;
  double chi = std::numeric_limits<double>::infinity();
  double delta = 0.0;

  // cylindrical / spherical view of the same point
  double r = 0.0;
  double rho = 0.0;
  double z = 0.0;
  double u = 0.0;  // cos(theta); 0 at the origin

  bool on_axis = false;

  double cos_eta() const;
  double sin_eta() const;
};

inline constexpr double kDefaultRingEps = 1e-12;

/// Cartesian -> toroidal. Throws FocalRingSingularity when the point lies
/// within eps_ring * a of the focal ring. On z = 0 the sign convention is
/// sign(0) = +1, so eta = pi inside the sphere r = a and eta = 0 outside.
ToroidalPoint to_toroidal(const CartesianPoint& p, double a, double eps_ring = kDefaultRingEps);

/// Toroidal -> Cartesian from (xi, eta, phi). Throws DegenerateLimit at
/// xi = 0, eta = 0 (the point at infinity).
CartesianPoint to_cartesian(const ToroidalPoint& t, double a);

/// Builds a ToroidalPoint directly from (xi, eta, phi).
ToroidalPoint from_toroidal(double xi, double eta, double phi, double a);

}  // namespace torharm
