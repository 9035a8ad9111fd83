#pragma once

#include <vector>

#include "torharm/coords.hpp"
#include "torharm/eval_result.hpp"

namespace torharm {

struct TorusGeometry {
  double R0 = 0.0;     // major radius
  double r0 = 0.0;     // minor radius
  double a = 0.0;      // focal radius sqrt(R0^2 - r0^2)
  double beta0 = 0.0;  // R0 / r0, the surface in toroidal coordinates
  double xi0 = 0.0;    // acosh(beta0)
};

/// Throws InvalidGeometry unless 0 < r0 < R0.
TorusGeometry torus_params(double R0, double r0);

enum class SphericalBranch { Inner, Outer };

enum class CellFlag { Ok, Slow, Diverged, Inside, Singular };
const char* to_string(CellFlag flag) noexcept;

/// Potential of a conducting torus held at V0, as a toroidal series and as
/// its rearrangement into spherical harmonics. Weights and spherical
/// coefficients are computed once at construction.
class TorusSolver {
 public:
  TorusSolver(const TorusGeometry& geom, double V0, int n_max, int k_max);

  const TorusGeometry& geometry() const { return geom_; }
  double V0() const { return V0_; }
  int n_max() const { return n_max_; }
  int k_max() const { return k_max_; }

  /// eps_n Q_{n-1/2}(beta0) / P_{n-1/2}(beta0)
  const std::vector<double>& weights() const { return weights_; }
  /// Coefficients of (r/a)^k P_k(u) and (a/r)^{k+1} P_k(u).
  const std::vector<double>& inner_coefficients() const { return inner_; }
  const std::vector<double>& outer_coefficients() const { return outer_; }

  /// Net charge in units of a: the limit of V r / a as r -> infinity.
  double monopole() const { return outer_[0]; }

  /// Toroidal series. Throws InsideConductor when beta > beta0.
  EvalResult potential_toroidal(const CartesianPoint& p) const;

  /// Spherical series on the chosen branch. Outside the safe regions
  /// r < a (1 - delta) (inner) and r > R0 (1 + delta) (outer) the result is
  /// returned but never marked converged.
  EvalResult potential_spherical(const CartesianPoint& p, SphericalBranch branch, double delta = 0.1) const;

 private:
  TorusGeometry geom_;
  double V0_;
  int n_max_, k_max_;
  std::vector<double> weights_, inner_, outer_;
};

EvalResult potential_toroidal(const TorusGeometry& geom, double V0, const CartesianPoint& p, int n_max);
EvalResult potential_spherical(const TorusGeometry& geom, double V0, const CartesianPoint& p,
                               SphericalBranch branch, int n_max, int k_max);

struct GridSpec {
  double rho_min = 0.0, rho_max = 2.0;
  int n_rho = 200;
  double z_min = -2.0, z_max = 2.0;
  int n_z = 200;

  double rho(int i) const;
  double z(int j) const;
};

/// Values on a rho-z half plane, stored with z as the outer index.
struct FieldGrid {
  GridSpec spec;
  double a = 0.0;
  std::vector<double> values;
  std::vector<CellFlag> flags;

  std::size_t index(int i_rho, int j_z) const {
    return static_cast<std::size_t>(j_z) * spec.n_rho + static_cast<std::size_t>(i_rho);
  }
};

enum class MapQuantity { Error, PotentialToroidal, PotentialSpherical };

/// Fills a grid with |V_spherical - V_toroidal| / |V0| (or one of the
/// potentials). The spherical branch is inner for r < (a + R0)/2. Both series
/// are continued into the conductor; cells there keep their value and are
/// flagged Inside unless a series fails. Cells with xi >= 2 xi0 (where the
/// toroidal series diverges) are Diverged with a NaN value. threads = 0 uses
/// the hardware concurrency. Output does not depend on the thread count.
FieldGrid error_map(const TorusSolver& solver, const GridSpec& grid, MapQuantity what = MapQuantity::Error,
                    unsigned threads = 0);

/// Series tail classification shared with the error map: Ok when the last
/// window of terms is below threshold, Diverged when it is not smaller than
/// the window before it, Slow otherwise.
CellFlag classify_tail(double last, double prev, double threshold);

}  // namespace torharm
