#include <atomic>
#include <cmath>
#include <cstdlib>
#include <string_view>

#include "kernels_internal.hpp"
#include "riccati/kernels.hpp"

namespace riccati::kernels {

namespace {

constexpr KernelTable kScalar{Isa::kScalar, "scalar", detail::gemm_acc_scalar,
                              detail::sum_sq_diff_scalar, detail::dot_scalar};

#if defined(RICCATI_HAVE_AVX2)
constexpr KernelTable kAvx2{Isa::kAvx2, "avx2", detail::gemm_acc_avx2,
                            detail::sum_sq_diff_avx2, detail::dot_avx2};

bool cpu_has_avx2() {
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}
#endif

const KernelTable* initial_table() {
  const KernelTable* best = avx2_table();
  if (const char* env = std::getenv("RICCATI_KERNELS")) {
    if (std::string_view(env) == "scalar") return &kScalar;
  }
  return best ? best : &kScalar;
}

std::atomic<const KernelTable*>& current() {
  static std::atomic<const KernelTable*> table{initial_table()};
  return table;
}

}  // namespace

const KernelTable& scalar_table() { return kScalar; }

const KernelTable* avx2_table() {
#if defined(RICCATI_HAVE_AVX2)
  static const bool ok = cpu_has_avx2();
  return ok ? &kAvx2 : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() { return *current().load(std::memory_order_acquire); }

void select(Isa isa) {
  const KernelTable* t = &kScalar;
  if (isa == Isa::kAvx2 && avx2_table() != nullptr) t = avx2_table();
  current().store(t, std::memory_order_release);
}

void multiply_add(const Matrix& a, const Matrix& b, Matrix& c) {
  if (a.cols() != b.rows() || c.rows() != a.rows() || c.cols() != b.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "multiply_add shapes");
  }
  if (a.size() == 0 || b.size() == 0) return;
  active().gemm_acc(static_cast<std::size_t>(a.rows()),
                    static_cast<std::size_t>(b.cols()),
                    static_cast<std::size_t>(a.cols()), a.data(),
                    static_cast<std::size_t>(a.outerStride()), b.data(),
                    static_cast<std::size_t>(b.outerStride()), c.data(),
                    static_cast<std::size_t>(c.outerStride()));
}

Matrix affine_product(const Matrix& c0, const Matrix& a, const Matrix& b) {
  Matrix c = c0;
  multiply_add(a, b, c);
  return c;
}

double frobenius_distance(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "frobenius_distance shapes");
  }
  return std::sqrt(active().sum_sq_diff(a.data(), b.data(),
                                        static_cast<std::size_t>(a.size())));
}

double dot(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "dot lengths");
  }
  return active().dot(a.data(), b.data(), static_cast<std::size_t>(a.size()));
}

}  // namespace riccati::kernels
