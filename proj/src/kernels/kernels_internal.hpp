#pragma once

#include <cstddef>

namespace riccati::kernels::detail {

void gemm_acc_scalar(std::size_t m, std::size_t n, std::size_t k,
                     const double* a, std::size_t lda, const double* b,
                     std::size_t ldb, double* c, std::size_t ldc);
double sum_sq_diff_scalar(const double* a, const double* b, std::size_t len);
double dot_scalar(const double* a, const double* b, std::size_t len);

#if defined(RICCATI_HAVE_AVX2)
void gemm_acc_avx2(std::size_t m, std::size_t n, std::size_t k,
                   const double* a, std::size_t lda, const double* b,
                   std::size_t ldb, double* c, std::size_t ldc);
double sum_sq_diff_avx2(const double* a, const double* b, std::size_t len);
double dot_avx2(const double* a, const double* b, std::size_t len);
#endif

}  // namespace riccati::kernels::detail
