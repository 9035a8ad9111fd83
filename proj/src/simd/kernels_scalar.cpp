#include <stdexcept>

#include "simd/kernel_body.hpp"

namespace torharm::simd {

ZonalSphericalPlan::ZonalSphericalPlan(std::vector<double> coefficients) : coef(std::move(coefficients)) {
  if (coef.empty()) throw std::invalid_argument("empty coefficient list");
  alpha.resize(coef.size());
  gamma.resize(coef.size());
  for (std::size_t k = 0; k < coef.size(); ++k) {
    alpha[k] = (2.0 * k + 1.0) / (k + 1.0);
    gamma[k] = k / (k + 1.0);
  }
}

ZonalToroidalPlan::ZonalToroidalPlan(std::vector<double> weights) : weight(std::move(weights)) {
  if (weight.empty()) throw std::invalid_argument("empty weight list");
  alpha.resize(weight.size());
  gamma.resize(weight.size());
  for (std::size_t n = 0; n < weight.size(); ++n) {
    alpha[n] = 2.0 * n / (n + 0.5);
    gamma[n] = (n - 0.5) / (n + 0.5);
  }
}

namespace scalar {

void zonal_spherical(const ZonalSphericalPlan& plan, std::span<const double> q, std::span<const double> u,
                     SeriesBatch& out) {
  for (std::size_t i = 0; i < q.size(); ++i) {
    const auto r = detail::spherical_point(plan, q[i], u[i]);
    out.value[i] = r.value;
    out.last[i] = r.last;
    out.prev[i] = r.prev;
  }
}

void zonal_toroidal(const ZonalToroidalPlan& plan, std::span<const double> beta,
                    std::span<const double> p_m_half, std::span<const double> p_half,
                    std::span<const double> cos_eta, SeriesBatch& out) {
  for (std::size_t i = 0; i < beta.size(); ++i) {
    const auto r = detail::toroidal_point(plan, beta[i], p_m_half[i], p_half[i], cos_eta[i]);
    out.value[i] = r.value;
    out.last[i] = r.last;
    out.prev[i] = r.prev;
  }
}

}  // namespace scalar
}  // namespace torharm::simd
