#include "coarsekit/kernels.hpp"

#if defined(__x86_64__)
#include <immintrin.h>
#endif

namespace coarsekit::kernels {

#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))

namespace {

#define COARSEKIT_AVX2 __attribute__((target("avx2,fma")))

COARSEKIT_AVX2 double horizontal_sum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

// (w0, w1) -> (w0, w0, w1, w1), matching interleaved complex pairs.
COARSEKIT_AVX2 __m256d duplicate_pairs(const double* w) {
  return _mm256_permute4x64_pd(_mm256_castpd128_pd256(_mm_loadu_pd(w)), 0x50);
}

COARSEKIT_AVX2 void nonlinear_term(const double* phi, double* out, std::size_t n, double alpha,
                                   double beta, double s) {
  const __m256d va = _mm256_set1_pd(alpha);
  const __m256d vc = _mm256_set1_pd(beta + s);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(phi + i);
    const __m256d inner = _mm256_fmsub_pd(_mm256_mul_pd(va, v), v, vc);
    _mm256_storeu_pd(out + i, _mm256_mul_pd(v, inner));
  }
  for (; i < n; ++i) out[i] = phi[i] * (alpha * phi[i] * phi[i] - (beta + s));
}

COARSEKIT_AVX2 void spectral_update(std::complex<double>* hat, const std::complex<double>* nl,
                                    const double* keep, const double* forcing, std::size_t n) {
  auto* h = reinterpret_cast<double*>(hat);
  const auto* g = reinterpret_cast<const double*>(nl);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d k = duplicate_pairs(keep + i);
    const __m256d f = duplicate_pairs(forcing + i);
    const __m256d hv = _mm256_loadu_pd(h + 2 * i);
    const __m256d gv = _mm256_loadu_pd(g + 2 * i);
    _mm256_storeu_pd(h + 2 * i, _mm256_fnmadd_pd(f, gv, _mm256_mul_pd(k, hv)));
  }
  for (; i < n; ++i) hat[i] = keep[i] * hat[i] - forcing[i] * nl[i];
}

COARSEKIT_AVX2 double bulk_energy_sum(const double* phi, std::size_t n, double alpha,
                                      double beta) {
  const double shift = beta / alpha;
  const __m256d vs = _mm256_set1_pd(shift);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(phi + i);
    const __m256d d = _mm256_fmsub_pd(v, v, vs);
    acc = _mm256_fmadd_pd(d, d, acc);
  }
  double sum = horizontal_sum(acc);
  for (; i < n; ++i) {
    const double d = phi[i] * phi[i] - shift;
    sum += d * d;
  }
  return 0.25 * alpha * sum;
}

COARSEKIT_AVX2 double weighted_power_sum(const std::complex<double>* hat, const double* weight,
                                         std::size_t n) {
  const auto* h = reinterpret_cast<const double*>(hat);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d w = duplicate_pairs(weight + i);
    const __m256d v = _mm256_loadu_pd(h + 2 * i);
    acc = _mm256_fmadd_pd(_mm256_mul_pd(w, v), v, acc);
  }
  double sum = horizontal_sum(acc);
  for (; i < n; ++i) sum += weight[i] * std::norm(hat[i]);
  return sum;
}

#undef COARSEKIT_AVX2

}  // namespace

const KernelTable* avx2_kernels() {
  static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  static const KernelTable table{"avx2", nonlinear_term, spectral_update, bulk_energy_sum,
                                 weighted_power_sum};
  return supported ? &table : nullptr;
}

#else

const KernelTable* avx2_kernels() { return nullptr; }

#endif

}  // namespace coarsekit::kernels
