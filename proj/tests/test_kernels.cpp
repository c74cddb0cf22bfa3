#include <gtest/gtest.h>

#include "riccati/kernels.hpp"
#include "support.hpp"

namespace riccati::kernels {
namespace {

using riccati::testing::random_matrix;

class KernelEquivalence : public ::testing::Test {
 protected:
  void SetUp() override {
    if (avx2_table() == nullptr) GTEST_SKIP() << "no AVX2/FMA on this host";
  }
  void TearDown() override { select(Isa::kAvx2); }
};

TEST(Kernels, ScalarGemmMatchesEigen) {
  for (Index m : {1, 3, 7, 20}) {
    for (Index n : {1, 4, 9}) {
      const Matrix a = random_matrix(m, 5);
      const Matrix b = random_matrix(5, n);
      Matrix c = random_matrix(m, n);
      const Matrix want = c + a * b;
      scalar_table().gemm_acc(m, n, 5, a.data(), m, b.data(), 5, c.data(), m);
      EXPECT_LE((c - want).norm(), 1e-13 * want.norm());
    }
  }
}

TEST(Kernels, ScalarReductions) {
  const Vector a = random_matrix(37, 1);
  const Vector b = random_matrix(37, 1);
  EXPECT_NEAR(scalar_table().dot(a.data(), b.data(), 37), a.dot(b), 1e-13);
  EXPECT_NEAR(scalar_table().sum_sq_diff(a.data(), b.data(), 37),
              (a - b).squaredNorm(), 1e-12);
}

TEST_F(KernelEquivalence, GemmAcrossShapes) {
  const KernelTable* avx = avx2_table();
  for (Index m : {1, 2, 5, 8, 13, 40}) {
    for (Index n : {1, 3, 4, 7, 16}) {
      for (Index k : {1, 6, 33}) {
        const Matrix a = random_matrix(m, k);
        const Matrix b = random_matrix(k, n);
        const Matrix c0 = random_matrix(m, n);
        Matrix cs = c0;
        Matrix cv = c0;
        scalar_table().gemm_acc(m, n, k, a.data(), m, b.data(), k, cs.data(),
                                m);
        avx->gemm_acc(m, n, k, a.data(), m, b.data(), k, cv.data(), m);
        EXPECT_LE((cs - cv).cwiseAbs().maxCoeff(),
                  1e-13 * std::max(1.0, cs.cwiseAbs().maxCoeff()))
            << m << "x" << n << "x" << k;
      }
    }
  }
}

TEST_F(KernelEquivalence, GemmOnSubBlocksWithLeadingDimension) {
  const Matrix a = random_matrix(11, 9);
  const Matrix b = random_matrix(9, 10);
  Matrix cs = random_matrix(11, 10);
  Matrix cv = cs;
  // 6×5 block of C from rows 2.., cols 1.., inner dimension 4
  scalar_table().gemm_acc(6, 5, 4, a.data() + 2, 11, b.data() + 9, 9,
                          cs.data() + 11 + 2, 11);
  avx2_table()->gemm_acc(6, 5, 4, a.data() + 2, 11, b.data() + 9, 9,
                         cv.data() + 11 + 2, 11);
  EXPECT_LE((cs - cv).cwiseAbs().maxCoeff(), 1e-13);
}

TEST_F(KernelEquivalence, Reductions) {
  for (std::size_t len : {0u, 1u, 3u, 4u, 7u, 8u, 15u, 64u, 1001u}) {
    const Vector a = random_matrix(static_cast<Index>(len), 1);
    const Vector b = random_matrix(static_cast<Index>(len), 1);
    const double ds = scalar_table().dot(a.data(), b.data(), len);
    const double dv = avx2_table()->dot(a.data(), b.data(), len);
    EXPECT_NEAR(ds, dv, 1e-12 * std::max(1.0, std::abs(ds))) << len;
    const double ss = scalar_table().sum_sq_diff(a.data(), b.data(), len);
    const double sv = avx2_table()->sum_sq_diff(a.data(), b.data(), len);
    EXPECT_NEAR(ss, sv, 1e-12 * std::max(1.0, ss)) << len;
  }
}

TEST_F(KernelEquivalence, MatrixWrappersAgree) {
  const Matrix a = random_matrix(20, 20);
  const Matrix b = random_matrix(20, 20);
  const Matrix c = random_matrix(20, 20);
  select(Isa::kScalar);
  EXPECT_EQ(active().isa, Isa::kScalar);
  const Matrix rs = affine_product(c, a, b);
  const double fs = frobenius_distance(a, b);
  select(Isa::kAvx2);
  EXPECT_EQ(active().isa, Isa::kAvx2);
  const Matrix rv = affine_product(c, a, b);
  const double fv = frobenius_distance(a, b);
  EXPECT_LE((rs - rv).norm(), 1e-13 * rs.norm());
  EXPECT_NEAR(fs, fv, 1e-13 * fs);
  EXPECT_LE((rs - (c + a * b)).norm(), 1e-13 * rs.norm());
}

TEST(Kernels, WrapperShapeChecks) {
  Matrix c = Matrix::Zero(2, 2);
  EXPECT_THROW(multiply_add(Matrix::Zero(2, 3), Matrix::Zero(2, 2), c), Error);
  EXPECT_THROW(frobenius_distance(Matrix::Zero(2, 2), Matrix::Zero(3, 2)),
               Error);
}

}  // namespace
}  // namespace riccati::kernels
