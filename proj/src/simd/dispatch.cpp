#include <atomic>
#include <stdexcept>

#include "torharm/simd/kernels.hpp"

namespace torharm::simd {

namespace {

std::atomic<int> g_forced{-1};

void check_sizes(std::size_t n, std::initializer_list<std::size_t> others, const SeriesBatch& out) {
  for (std::size_t s : others) {
    if (s != n) throw std::invalid_argument("kernel inputs differ in length");
  }
  if (out.value.size() < n || out.last.size() < n || out.prev.size() < n) {
    throw std::invalid_argument("kernel output batch too small");
  }
}

}  // namespace

const char* to_string(Isa isa) noexcept { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

Isa detected_isa() noexcept { return avx2::available() ? Isa::Avx2 : Isa::Scalar; }

Isa active_isa() noexcept {
  const int forced = g_forced.load(std::memory_order_relaxed);
  if (forced < 0) return detected_isa();
  const Isa want = static_cast<Isa>(forced);
  return want == Isa::Avx2 && !avx2::available() ? Isa::Scalar : want;
}

void force_isa(Isa isa) noexcept { g_forced.store(static_cast<int>(isa), std::memory_order_relaxed); }

void zonal_spherical(const ZonalSphericalPlan& plan, std::span<const double> q, std::span<const double> u,
                     SeriesBatch& out) {
  check_sizes(q.size(), {u.size()}, out);
  if (active_isa() == Isa::Avx2) {
    avx2::zonal_spherical(plan, q, u, out);
  } else {
    scalar::zonal_spherical(plan, q, u, out);
  }
}

void zonal_toroidal(const ZonalToroidalPlan& plan, std::span<const double> beta,
                    std::span<const double> p_m_half, std::span<const double> p_half,
                    std::span<const double> cos_eta, SeriesBatch& out) {
  check_sizes(beta.size(), {p_m_half.size(), p_half.size(), cos_eta.size()}, out);
  if (active_isa() == Isa::Avx2) {
    avx2::zonal_toroidal(plan, beta, p_m_half, p_half, cos_eta, out);
  } else {
    scalar::zonal_toroidal(plan, beta, p_m_half, p_half, cos_eta, out);
  }
}

}  // namespace torharm::simd
