#include "torharm/coords.hpp"

#include <cmath>
#include <numbers>

#include "torharm/errors.hpp"

namespace torharm {

double ToroidalPoint::cos_eta() const { return std::cos(eta); }
double ToroidalPoint::sin_eta() const { return std::sin(eta); }

ToroidalPoint to_toroidal(const CartesianPoint& p, double a, double eps_ring) {
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw Error(ErrorKind::InvalidArgument, "focal radius must be positive and finite");
  }
  if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z)) {
    throw Error(ErrorKind::InvalidArgument, "point has non-finite components");
  }

  ToroidalPoint t;
  t.rho = std::hypot(p.x, p.y);
  t.z = p.z == 0.0 ? 0.0 : p.z;  // -0 -> +0 so that sign(0) = +1
  const double r2 = t.rho * t.rho + t.z * t.z;
  t.r = std::sqrt(r2);
  t.u = t.r > 0.0 ? t.z / t.r : 0.0;
  t.phi = std::atan2(p.y, p.x);

  // distances to the near and far side of the focal ring in this half-plane
  const double d_near = std::hypot(t.rho - a, t.z);
  const double d_far = std::hypot(t.rho + a, t.z);
  if (d_near < eps_ring * a) {
    throw Error(ErrorKind::FocalRingSingularity, "point lies on the focal ring");
  }

  // xi = log(d_far / d_near), written to stay accurate near the axis
  t.xi = std::log1p(4.0 * t.rho * a / ((d_near + d_far) * d_near));
  // d_near * d_far = sqrt((r^2 + a^2)^2 - 4 rho^2 a^2)
  const double denom = d_near * d_far;
  t.beta = (r2 + a * a) / denom;
  if (t.beta < 1.0) t.beta = 1.0;
  t.eta = std::atan2(2.0 * a * t.z, r2 - a * a);
  // beta - cos(eta) = 2 a^2 / denom
  t.delta = std::sqrt(4.0 * a * a / denom);

  t.on_axis = t.rho == 0.0;
  t.chi = t.on_axis ? std::numeric_limits<double>::infinity() : (r2 + a * a) / (2.0 * t.rho * a);
  return t;
}

ToroidalPoint from_toroidal(double xi, double eta, double phi, double a) {
  if (!(xi >= 0.0)) throw Error(ErrorKind::InvalidArgument, "xi must be non-negative");
  ToroidalPoint t;
  t.xi = xi;
  t.eta = eta;
  t.phi = phi;
  t.beta = std::cosh(xi);
  t.on_axis = xi == 0.0;
  t.chi = t.on_axis ? std::numeric_limits<double>::infinity() : 1.0 / std::tanh(xi);
  const double gap = t.beta - std::cos(eta);
  if (gap <= 0.0) {
    throw Error(ErrorKind::DegenerateLimit, "xi = 0, eta = 0 is the point at infinity");
  }
  t.delta = std::sqrt(2.0 * gap);
  t.rho = a * std::sinh(xi) / gap;
  t.z = a * std::sin(eta) / gap;
  t.r = std::hypot(t.rho, t.z);
  t.u = t.r > 0.0 ? t.z / t.r : 0.0;
  return t;
}

CartesianPoint to_cartesian(const ToroidalPoint& t, double a) {
  const double gap = std::cosh(t.xi) - std::cos(t.eta);
  if (!(gap > 0.0)) {
    throw Error(ErrorKind::DegenerateLimit, "xi = 0, eta = 0 is the point at infinity");
  }
  const double rho = a * std::sinh(t.xi) / gap;
  return {rho * std::cos(t.phi), rho * std::sin(t.phi), a * std::sin(t.eta) / gap};
}

}  // namespace torharm
