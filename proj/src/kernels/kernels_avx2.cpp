// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.
#include <immintrin.h>

#include "kernels_internal.hpp"

namespace riccati::kernels::detail {

namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

void gemm_acc_avx2(std::size_t m, std::size_t n, std::size_t k,
                   const double* a, std::size_t lda, const double* b,
                   std::size_t ldb, double* c, std::size_t ldc) {
  const std::size_t m4 = m & ~std::size_t{3};
  for (std::size_t j = 0; j < n; ++j) {
    double* cj = c + j * ldc;
    std::size_t p = 0;
    // Four columns of A per pass keep four broadcasts live per FMA chain.
    for (; p + 4 <= k; p += 4) {
      const double* a0 = a + p * lda;
      const double* a1 = a0 + lda;
      const double* a2 = a1 + lda;
      const double* a3 = a2 + lda;
      const double s0 = b[p + j * ldb];
      const double s1 = b[p + 1 + j * ldb];
      const double s2 = b[p + 2 + j * ldb];
      const double s3 = b[p + 3 + j * ldb];
      const __m256d b0 = _mm256_set1_pd(s0);
      const __m256d b1 = _mm256_set1_pd(s1);
      const __m256d b2 = _mm256_set1_pd(s2);
      const __m256d b3 = _mm256_set1_pd(s3);
      std::size_t i = 0;
      for (; i < m4; i += 4) {
        __m256d acc = _mm256_loadu_pd(cj + i);
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(a0 + i), b0, acc);
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(a1 + i), b1, acc);
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(a2 + i), b2, acc);
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(a3 + i), b3, acc);
        _mm256_storeu_pd(cj + i, acc);
      }
      for (; i < m; ++i) {
        cj[i] += a0[i] * s0 + a1[i] * s1 + a2[i] * s2 + a3[i] * s3;
      }
    }
    for (; p < k; ++p) {
      const double* ap = a + p * lda;
      const double s = b[p + j * ldb];
      const __m256d bp = _mm256_set1_pd(s);
      std::size_t i = 0;
      for (; i < m4; i += 4) {
        __m256d acc = _mm256_loadu_pd(cj + i);
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(ap + i), bp, acc);
        _mm256_storeu_pd(cj + i, acc);
      }
      for (; i < m; ++i) cj[i] += ap[i] * s;
    }
  }
}

double sum_sq_diff_avx2(const double* a, const double* b, std::size_t len) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= len; i += 8) {
    const __m256d d0 =
        _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    const __m256d d1 =
        _mm256_sub_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4));
    acc0 = _mm256_fmadd_pd(d0, d0, acc0);
    acc1 = _mm256_fmadd_pd(d1, d1, acc1);
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < len; ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

double dot_avx2(const double* a, const double* b, std::size_t len) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= len; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i),
                           acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4),
                           _mm256_loadu_pd(b + i + 4), acc1);
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < len; ++i) s += a[i] * b[i];
  return s;
}

}  // namespace riccati::kernels::detail
