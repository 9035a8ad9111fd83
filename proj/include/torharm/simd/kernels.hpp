#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace torharm::simd {

/// Width of the windows used to judge the tail of a series.
inline constexpr int kTailWindow = 20;

/// Per-point output of the series kernels. `last` is max |term| over the final
/// kTailWindow terms, `prev` over the kTailWindow terms before those.
struct SeriesBatch {
  std::vector<double> value, last, prev;
  explicit SeriesBatch(std::size_t n = 0) : value(n), last(n), prev(n) {}
};

/// Coefficients for sum_k A_k q^k P_k(u), with the Legendre recurrence
/// factors precomputed.
struct ZonalSphericalPlan {
  std::vector<double> coef;   // A_k, k = 0..K
  std::vector<double> alpha;  // (2k+1)/(k+1)
  std::vector<double> gamma;  // k/(k+1)
  explicit ZonalSphericalPlan(std::vector<double> coefficients);
  int degree() const { return static_cast<int>(coef.size()) - 1; }
};

/// Coefficients for sum_n w_n P_{n-1/2}(beta) cos(n eta), with the degree
/// recurrence factors precomputed. P_{-1/2}(beta) and P_{1/2}(beta) are
/// per-point seeds.
struct ZonalToroidalPlan {
  std::vector<double> weight;  // w_n, n = 0..N
  std::vector<double> alpha;   // 2n/(n+1/2)
  std::vector<double> gamma;   // (n-1/2)/(n+1/2)
  explicit ZonalToroidalPlan(std::vector<double> weights);
  int order() const { return static_cast<int>(weight.size()) - 1; }
};

enum class Isa { Scalar, Avx2 };

const char* to_string(Isa isa) noexcept;

/// Best instruction set supported by this CPU and build.
Isa detected_isa() noexcept;

/// Kernel selection used by the dispatching entry points. Defaults to
/// detected_isa(); forcing an unsupported ISA falls back to scalar.
Isa active_isa() noexcept;
void force_isa(Isa isa) noexcept;

// Dispatching entry points. All spans have the same length.
void zonal_spherical(const ZonalSphericalPlan& plan, std::span<const double> q, std::span<const double> u,
                     SeriesBatch& out);
void zonal_toroidal(const ZonalToroidalPlan& plan, std::span<const double> beta,
                    std::span<const double> p_m_half, std::span<const double> p_half, std::span<const double> cos_eta, SeriesBatch& out);

// Explicit variants, for equivalence tests and benchmarks.
namespace scalar {
void zonal_spherical(const ZonalSphericalPlan& plan, std::span<const double> q, std::span<const double> u,
                     SeriesBatch& out);
void zonal_toroidal(const ZonalToroidalPlan& plan, std::span<const double> beta,
                    std::span<const double> p_m_half, std::span<const double> p_half, std::span<const double> cos_eta, SeriesBatch& out);
}  // namespace scalar

namespace avx2 {
bool available() noexcept;
void zonal_spherical(const ZonalSphericalPlan& plan, std::span<const double> q, std::span<const double> u,
                     SeriesBatch& out);
void zonal_toroidal(const ZonalToroidalPlan& plan, std::span<const double> beta,
                    std::span<const double> p_m_half, std::span<const double> p_half, std::span<const double> cos_eta, SeriesBatch& out);
}  // namespace avx2

}  // namespace torharm::simd
