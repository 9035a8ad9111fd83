#include "simd/kernel_body.hpp"

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#define TORHARM_HAVE_X86 1
#endif

namespace torharm::simd::avx2 {

#ifdef TORHARM_HAVE_X86

bool available() noexcept { return __builtin_cpu_supports("avx2"); }

namespace {

// Plain AVX2 without FMA: each lane performs exactly the operations of the
// scalar loop in the same order, so results match bit for bit.

__attribute__((target("avx2"))) inline __m256d abs4(__m256d v) {
  return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v);
}

__attribute__((target("avx2"))) void spherical4(const ZonalSphericalPlan& plan, const double* q_in,
                                                const double* u_in, double* value, double* last_out,
                                                double* prev_out) {
  const int K = plan.degree();
  const __m256d q = _mm256_loadu_pd(q_in);
  const __m256d u = _mm256_loadu_pd(u_in);
  __m256d qk = _mm256_set1_pd(1.0), p_prev = _mm256_setzero_pd(), p = _mm256_set1_pd(1.0);
  __m256d sum = _mm256_setzero_pd(), comp = _mm256_setzero_pd();
  __m256d last = _mm256_setzero_pd(), prev = _mm256_setzero_pd();
  for (int k = 0; k <= K; ++k) {
    const __m256d term = _mm256_mul_pd(_mm256_mul_pd(_mm256_set1_pd(plan.coef[k]), qk), p);
    const __m256d y = _mm256_sub_pd(term, comp);
    const __m256d t = _mm256_add_pd(sum, y);
    comp = _mm256_sub_pd(_mm256_sub_pd(t, sum), y);
    sum = t;
    const __m256d mag = abs4(term);
    if (k > K - kTailWindow) {
      last = _mm256_max_pd(mag, last);
    } else if (k > K - 2 * kTailWindow) {
      prev = _mm256_max_pd(mag, prev);
    }
    const __m256d p_next = _mm256_sub_pd(_mm256_mul_pd(_mm256_mul_pd(_mm256_set1_pd(plan.alpha[k]), u), p),
                                         _mm256_mul_pd(_mm256_set1_pd(plan.gamma[k]), p_prev));
    p_prev = p;
    p = p_next;
    qk = _mm256_mul_pd(qk, q);
  }
  _mm256_storeu_pd(value, sum);
  _mm256_storeu_pd(last_out, last);
  _mm256_storeu_pd(prev_out, prev);
}

__attribute__((target("avx2"))) void toroidal4(const ZonalToroidalPlan& plan, const double* beta_in,
                                               const double* p0_in, const double* p1_in, const double* ce_in,
                                               double* value, double* last_out, double* prev_out) {
  const int N = plan.order();
  const __m256d beta = _mm256_loadu_pd(beta_in);
  const __m256d cos_eta = _mm256_loadu_pd(ce_in);
  __m256d p_prev = _mm256_loadu_pd(p1_in), p = _mm256_loadu_pd(p0_in);
  __m256d c_prev = cos_eta, c = _mm256_set1_pd(1.0);
  const __m256d two_cos = _mm256_mul_pd(_mm256_set1_pd(2.0), cos_eta);
  __m256d sum = _mm256_setzero_pd(), comp = _mm256_setzero_pd();
  __m256d last = _mm256_setzero_pd(), prev = _mm256_setzero_pd();
  for (int n = 0; n <= N; ++n) {
    const __m256d term = _mm256_mul_pd(_mm256_mul_pd(_mm256_set1_pd(plan.weight[n]), p), c);
    const __m256d y = _mm256_sub_pd(term, comp);
    const __m256d t = _mm256_add_pd(sum, y);
    comp = _mm256_sub_pd(_mm256_sub_pd(t, sum), y);
    sum = t;
    const __m256d mag = abs4(term);
    if (n > N - kTailWindow) {
      last = _mm256_max_pd(mag, last);
    } else if (n > N - 2 * kTailWindow) {
      prev = _mm256_max_pd(mag, prev);
    }
    const __m256d p_next =
        _mm256_sub_pd(_mm256_mul_pd(_mm256_mul_pd(_mm256_set1_pd(plan.alpha[n]), beta), p),
                      _mm256_mul_pd(_mm256_set1_pd(plan.gamma[n]), p_prev));
    p_prev = p;
    p = p_next;
    const __m256d c_next = _mm256_sub_pd(_mm256_mul_pd(two_cos, c), c_prev);
    c_prev = c;
    c = c_next;
  }
  _mm256_storeu_pd(value, sum);
  _mm256_storeu_pd(last_out, last);
  _mm256_storeu_pd(prev_out, prev);
}

}  // namespace

void zonal_spherical(const ZonalSphericalPlan& plan, std::span<const double> q, std::span<const double> u,
                     SeriesBatch& out) {
  std::size_t i = 0;
  for (; i + 4 <= q.size(); i += 4) {
    spherical4(plan, &q[i], &u[i], &out.value[i], &out.last[i], &out.prev[i]);
  }
  for (; i < q.size(); ++i) {
    const auto r = detail::spherical_point(plan, q[i], u[i]);
    out.value[i] = r.value;
    out.last[i] = r.last;
    out.prev[i] = r.prev;
  }
}

void zonal_toroidal(const ZonalToroidalPlan& plan, std::span<const double> beta,
                    std::span<const double> p_m_half, std::span<const double> p_half,
                    std::span<const double> cos_eta, SeriesBatch& out) {
  std::size_t i = 0;
  for (; i + 4 <= beta.size(); i += 4) {
    toroidal4(plan, &beta[i], &p_m_half[i], &p_half[i], &cos_eta[i], &out.value[i], &out.last[i],
              &out.prev[i]);
  }
  for (; i < beta.size(); ++i) {
    const auto r = detail::toroidal_point(plan, beta[i], p_m_half[i], p_half[i], cos_eta[i]);
    out.value[i] = r.value;
    out.last[i] = r.last;
    out.prev[i] = r.prev;
  }
}

#else

bool available() noexcept { return false; }

void zonal_spherical(const ZonalSphericalPlan& plan, std::span<const double> q, std::span<const double> u,
                     SeriesBatch& out) {
  scalar::zonal_spherical(plan, q, u, out);
}

void zonal_toroidal(const ZonalToroidalPlan& plan, std::span<const double> beta,
                    std::span<const double> p_m_half, std::span<const double> p_half,
                    std::span<const double> cos_eta, SeriesBatch& out) {
  scalar::zonal_toroidal(plan, beta, p_m_half, p_half, cos_eta, out);
}

#endif

}  // namespace torharm::simd::avx2
