#include "torharm/torus.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

#include "torharm/coeffs.hpp"
#include "torharm/errors.hpp"
#include "torharm/simd/kernels.hpp"
#include "torharm/special.hpp"

namespace torharm {

namespace {

using Extended = boost::multiprecision::cpp_bin_float_50;

constexpr double kPi = std::numbers::pi;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
// Tail threshold relative to V0 for a series to count as converged.
constexpr double kTailThreshold = 1e-12;
// Slack for surface points whose computed beta lands a hair above beta0.
constexpr double kSurfaceSlack = 1e-12;

Extended to_extended(const ScaledReal& v) {
  return boost::multiprecision::ldexp(Extended(v.mantissa()), static_cast<int>(v.exponent()));
}

struct ToroidalSeeds {
  double p_m_half, p_half;
};

ToroidalSeeds seeds_at(double beta) {
  return {legendre_P_half(0, 0, beta).value, legendre_P_half(1, 0, beta).value};
}

bool inside_torus(const TorusGeometry& g, double rho, double z) {
  return (rho - g.R0) * (rho - g.R0) + z * z < g.r0 * g.r0;
}

CellFlag worse(CellFlag x, CellFlag y) {
  auto rank = [](CellFlag f) {
    switch (f) {
      case CellFlag::Singular: return 4;
      case CellFlag::Diverged: return 3;
      case CellFlag::Slow: return 2;
      case CellFlag::Inside: return 1;
      case CellFlag::Ok: return 0;
    }
    return 0;
  };
  return rank(x) >= rank(y) ? x : y;
}

SeriesStatus status_of(CellFlag f) {
  switch (f) {
    case CellFlag::Ok: return SeriesStatus::Converged;
    case CellFlag::Slow: return SeriesStatus::Slow;
    default: return SeriesStatus::Diverged;
  }
}

}  // namespace

const char* to_string(CellFlag flag) noexcept {
  switch (flag) {
    case CellFlag::Ok: return "OK";
    case CellFlag::Slow: return "SLOW";
    case CellFlag::Diverged: return "DIV";
    case CellFlag::Inside: return "INSIDE";
    case CellFlag::Singular: return "SING";
  }
  return "?";
}

CellFlag classify_tail(double last, double prev, double threshold) {
  if (!std::isfinite(last) || !std::isfinite(prev)) return CellFlag::Diverged;
  if (last < threshold) return CellFlag::Ok;
  if (last >= prev) return CellFlag::Diverged;
  return CellFlag::Slow;
}

TorusGeometry torus_params(double R0, double r0) {
  if (!(r0 > 0.0) || !(R0 > r0) || !std::isfinite(R0)) {
    throw Error(ErrorKind::InvalidGeometry, "torus needs 0 < r0 < R0");
  }
  TorusGeometry g;
  g.R0 = R0;
  g.r0 = r0;
  g.a = std::sqrt((R0 - r0) * (R0 + r0));
  g.beta0 = R0 / r0;
  g.xi0 = std::acosh(g.beta0);
  return g;
}

double GridSpec::rho(int i) const {
  return n_rho > 1 ? rho_min + i * (rho_max - rho_min) / (n_rho - 1) : rho_min;
}

double GridSpec::z(int j) const { return n_z > 1 ? z_min + j * (z_max - z_min) / (n_z - 1) : z_min; }

TorusSolver::TorusSolver(const TorusGeometry& geom, double V0, int n_max, int k_max)
    : geom_(geom), V0_(V0), n_max_(n_max), k_max_(k_max) {
  if (!std::isfinite(V0)) throw Error(ErrorKind::InvalidArgument, "V0 must be finite");
  if (n_max < 1 || k_max < 1) throw Error(ErrorKind::InvalidArgument, "n_max and k_max must be >= 1");
  // P_{n-1/2}(beta) up to the inner-torus boundary grows like e^{2 n xi0}
  if (2.0 * n_max * geom.xi0 > 700.0) {
    throw Error(ErrorKind::Overflow, "n_max too large for double-precision toroidal sums at this beta0");
  }

  const auto p0 = legendre_P_half_sequence_scaled(n_max, 0, geom.beta0);
  std::vector<ScaledReal> w(n_max + 1);
  weights_.resize(n_max + 1);
  for (int n = 0; n <= n_max; ++n) {
    w[n] = ScaledReal(n == 0 ? 1.0 : 2.0) * legendre_Q_half_scaled(n, 0, geom.beta0).value / p0[n];
    weights_[n] = w[n].to_double();
  }

  // Rearranged spherical coefficients; the alternating inner sums are
  // accumulated in extended precision.
  const CoeffTable table = build_table(0, n_max, k_max);
  inner_.assign(k_max + 1, 0.0);
  outer_.assign(k_max + 1, 0.0);
  const double pre = 2.0 * V0 / kPi;
  for (int k = 0; k <= k_max; k += 2) {
    Extended in = 0, out = 0;
    for (int n = 0; n <= n_max; ++n) {
      const Extended term = to_extended(w[n] * table.c(n, k));
      out += term;
      in += (n & 1) ? -term : term;
    }
    const double pk0 = legendre_zero(k, 0);
    inner_[k] = pre * pk0 * static_cast<double>(in);
    outer_[k] = pre * pk0 * static_cast<double>(out);
  }
}

EvalResult TorusSolver::potential_toroidal(const CartesianPoint& p) const {
  const ToroidalPoint t = to_toroidal(p, geom_.a);
  if (t.beta > geom_.beta0 * (1.0 + kSurfaceSlack)) {
    throw Error(ErrorKind::InsideConductor, "point lies inside the conducting torus");
  }
  const auto seeds = seeds_at(t.beta);
  const double beta[1] = {t.beta}, pm[1] = {seeds.p_m_half}, ph[1] = {seeds.p_half}, ce[1] = {t.cos_eta()};
  simd::SeriesBatch out(1);
  simd::zonal_toroidal(simd::ZonalToroidalPlan(weights_), beta, pm, ph, ce, out);

  const double scale = V0_ * t.delta / kPi;
  const CellFlag flag =
      classify_tail(std::fabs(scale) * out.last[0], std::fabs(scale) * out.prev[0], kTailThreshold * std::fabs(V0_));
  EvalResult r;
  r.value = scale * out.value[0];
  r.terms_used = n_max_ + 1;
  r.est_error = std::fabs(scale) * out.last[0];
  r.converged = flag == CellFlag::Ok;
  r.status = status_of(flag);
  return r;
}

EvalResult TorusSolver::potential_spherical(const CartesianPoint& p, SphericalBranch branch, double delta) const {
  const double r = std::sqrt(p.x * p.x + p.y * p.y + p.z * p.z);
  const double u = r > 0.0 ? p.z / r : 0.0;
  const bool inner = branch == SphericalBranch::Inner;
  if (!inner && r == 0.0) throw Error(ErrorKind::InvalidArgument, "outer series is undefined at the origin");
  const double q = inner ? r / geom_.a : geom_.a / r;
  const double scale = inner ? 1.0 : q;

  const double qs[1] = {q}, us[1] = {u};
  simd::SeriesBatch out(1);
  simd::zonal_spherical(simd::ZonalSphericalPlan(inner ? inner_ : outer_), qs, us, out);

  const CellFlag flag = classify_tail(scale * out.last[0], scale * out.prev[0], kTailThreshold * std::fabs(V0_));
  const bool safe = inner ? r < geom_.a * (1.0 - delta) : r > geom_.R0 * (1.0 + delta);
  EvalResult res;
  res.value = scale * out.value[0];
  res.terms_used = k_max_ + 1;
  res.est_error = scale * out.last[0];
  res.converged = safe && flag == CellFlag::Ok;
  res.status = flag == CellFlag::Diverged ? SeriesStatus::Diverged
                                          : (res.converged ? SeriesStatus::Converged : SeriesStatus::Slow);
  return res;
}

EvalResult potential_toroidal(const TorusGeometry& geom, double V0, const CartesianPoint& p, int n_max) {
  return TorusSolver(geom, V0, n_max, 1).potential_toroidal(p);
}

EvalResult potential_spherical(const TorusGeometry& geom, double V0, const CartesianPoint& p,
                               SphericalBranch branch, int n_max, int k_max) {
  return TorusSolver(geom, V0, n_max, k_max).potential_spherical(p, branch);
}

// ---------------------------------------------------------------------------

namespace {

void fill_rows(const TorusSolver& solver, const GridSpec& grid, MapQuantity what, int j_begin, int j_end,
               FieldGrid& out) {
  const TorusGeometry& g = solver.geometry();
  const double V0 = std::fabs(solver.V0());
  const double threshold = kTailThreshold * V0;
  const double midpoint = 0.5 * (g.a + g.R0);
  const simd::ZonalToroidalPlan tplan(solver.weights());
  const simd::ZonalSphericalPlan inner_plan(solver.inner_coefficients());
  const simd::ZonalSphericalPlan outer_plan(solver.outer_coefficients());
  const bool need_toroidal = what != MapQuantity::PotentialSpherical;
  const bool need_spherical = what != MapQuantity::PotentialToroidal;

  const int n = grid.n_rho;
  std::vector<double> beta, pm, ph, ce, scale_t, q_in, u_in, q_out, u_out;
  std::vector<int> idx_t, idx_in, idx_out;
  std::vector<double> vt(n, kNaN), vs(n, kNaN);
  std::vector<CellFlag> ft(n), fs(n), base(n);

  for (int j = j_begin; j < j_end; ++j) {
    const double z = grid.z(j);
    for (auto* v : {&beta, &pm, &ph, &ce, &scale_t, &q_in, &u_in, &q_out, &u_out}) v->clear();
    idx_t.clear();
    idx_in.clear();
    idx_out.clear();

    for (int i = 0; i < n; ++i) {
      const double rho = grid.rho(i);
      base[i] = inside_torus(g, rho, z) ? CellFlag::Inside : CellFlag::Ok;
      ft[i] = fs[i] = CellFlag::Ok;
      vt[i] = vs[i] = kNaN;
      if (need_toroidal) {
        try {
          const ToroidalPoint t = to_toroidal({rho, 0.0, z}, g.a);
          if (t.xi >= 2.0 * g.xi0) {
            ft[i] = CellFlag::Diverged;
          } else {
            const auto seeds = seeds_at(t.beta);
            beta.push_back(t.beta);
            pm.push_back(seeds.p_m_half);
            ph.push_back(seeds.p_half);
            ce.push_back(t.cos_eta());
            scale_t.push_back(solver.V0() * t.delta / kPi);
            idx_t.push_back(i);
          }
        } catch (const Error&) {
          ft[i] = CellFlag::Singular;
        }
      }
      if (need_spherical) {
        const double r = std::hypot(rho, z);
        const double u = r > 0.0 ? z / r : 0.0;
        if (r < midpoint) {
          q_in.push_back(r / g.a);
          u_in.push_back(u);
          idx_in.push_back(i);
        } else {
          q_out.push_back(g.a / r);
          u_out.push_back(u);
          idx_out.push_back(i);
        }
      }
    }

    if (!idx_t.empty()) {
      simd::SeriesBatch b(idx_t.size());
      simd::zonal_toroidal(tplan, beta, pm, ph, ce, b);
      for (std::size_t c = 0; c < idx_t.size(); ++c) {
        const double s = std::fabs(scale_t[c]);
        vt[idx_t[c]] = scale_t[c] * b.value[c];
        ft[idx_t[c]] = classify_tail(s * b.last[c], s * b.prev[c], threshold);
      }
    }
    if (!idx_in.empty()) {
      simd::SeriesBatch b(idx_in.size());
      simd::zonal_spherical(inner_plan, q_in, u_in, b);
      for (std::size_t c = 0; c < idx_in.size(); ++c) {
        vs[idx_in[c]] = b.value[c];
        fs[idx_in[c]] = classify_tail(b.last[c], b.prev[c], threshold);
      }
    }
    if (!idx_out.empty()) {
      simd::SeriesBatch b(idx_out.size());
      simd::zonal_spherical(outer_plan, q_out, u_out, b);
      for (std::size_t c = 0; c < idx_out.size(); ++c) {
        const double s = q_out[c];
        vs[idx_out[c]] = s * b.value[c];
        fs[idx_out[c]] = classify_tail(s * b.last[c], s * b.prev[c], threshold);
      }
    }

    for (int i = 0; i < n; ++i) {
      double value = kNaN;
      CellFlag flag = base[i];
      switch (what) {
        case MapQuantity::Error:
          value = std::fabs(vs[i] - vt[i]) / V0;
          flag = worse(flag, worse(ft[i], fs[i]));
          break;
        case MapQuantity::PotentialToroidal:
          value = vt[i];
          flag = worse(flag, ft[i]);
          break;
        case MapQuantity::PotentialSpherical:
          value = vs[i];
          flag = worse(flag, fs[i]);
          break;
      }
      if (!std::isfinite(value)) value = kNaN;
      out.values[out.index(i, j)] = value;
      out.flags[out.index(i, j)] = flag;
    }
  }
}

}  // namespace

FieldGrid error_map(const TorusSolver& solver, const GridSpec& grid, MapQuantity what, unsigned threads) {
  if (grid.n_rho < 1 || grid.n_z < 1) throw Error(ErrorKind::InvalidArgument, "grid needs at least one cell");
  if (!(grid.rho_min >= 0.0) || !(grid.rho_max >= grid.rho_min) || !(grid.z_max >= grid.z_min)) {
    throw Error(ErrorKind::InvalidArgument, "grid ranges must be ordered with rho >= 0");
  }
  FieldGrid out;
  out.spec = grid;
  out.a = solver.geometry().a;
  out.values.assign(static_cast<std::size_t>(grid.n_rho) * grid.n_z, kNaN);
  out.flags.assign(out.values.size(), CellFlag::Singular);

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(grid.n_z));
  if (threads <= 1) {
    fill_rows(solver, grid, what, 0, grid.n_z, out);
    return out;
  }
  std::vector<std::thread> pool;
  const int per = (grid.n_z + static_cast<int>(threads) - 1) / static_cast<int>(threads);
  for (unsigned t = 0; t < threads; ++t) {
    const int begin = static_cast<int>(t) * per;
    const int end = std::min(grid.n_z, begin + per);
    if (begin >= end) break;
    pool.emplace_back([&, begin, end] { fill_rows(solver, grid, what, begin, end, out); });
  }
  for (auto& th : pool) th.join();
  return out;
}

}  // namespace torharm
