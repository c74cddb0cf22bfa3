#pragma once

#include <cstddef>
#include <string_view>

#include "riccati/linalg.hpp"

// Dense inner-loop kernels with a portable scalar reference and an AVX2/FMA
// variant. The variant is picked once at first use from the CPU features;
// RICCATI_KERNELS=scalar|avx2 overrides the choice.
namespace riccati::kernels {

enum class Isa { kScalar, kAvx2 };

struct KernelTable {
  Isa isa;
  std::string_view name;
  // C(m×n) += A(m×k)·B(k×n), all column-major with leading dimensions.
  void (*gemm_acc)(std::size_t m, std::size_t n, std::size_t k,
                   const double* a, std::size_t lda, const double* b,
                   std::size_t ldb, double* c, std::size_t ldc);
  double (*sum_sq_diff)(const double* a, const double* b, std::size_t len);
  double (*dot)(const double* a, const double* b, std::size_t len);
};

const KernelTable& scalar_table();
/// nullptr when the build or the running CPU lacks AVX2+FMA.
const KernelTable* avx2_table();

const KernelTable& active();
/// Test hook; also used by the CLI to honour RICCATI_KERNELS.
void select(Isa isa);

// Matrix-level wrappers over the active table.

/// c += a·b
void multiply_add(const Matrix& a, const Matrix& b, Matrix& c);
/// Returns c0 + a·b.
Matrix affine_product(const Matrix& c0, const Matrix& a, const Matrix& b);
/// ‖a − b‖_F
double frobenius_distance(const Matrix& a, const Matrix& b);
double dot(const Vector& a, const Vector& b);

}  // namespace riccati::kernels
