#include <gtest/gtest.h>

#include <cmath>

#include "interlacing/error.hpp"
#include "interlacing/hermitian.hpp"
#include "interlacing/random.hpp"

using namespace interlacing;

TEST(Hermitian, RejectsNonHermitian) {
  MatrixC a(2, 2);
  a << Complex{1, 0}, Complex{2, 1}, Complex{2, 1}, Complex{3, 0};
  EXPECT_THROW(HermitianMatrix{a}, Error);
  a(1, 0) = Complex{2, -1};
  EXPECT_NO_THROW(HermitianMatrix{a});
}

TEST(Hermitian, EigenvaluesAgreeWithCharPolyRoots) {
  Rng rng(11);
  for (int t = 0; t < 20; ++t) {
    const Index d = 1 + t % 6;
    const HermitianMatrix a = random_psd(d, d, rng) - random_psd(d, 1, rng);
    const auto ev = eigenvalues(a);
    const auto rs = real_roots(char_poly(a));
    ASSERT_EQ(rs.size(), ev.size());
    for (std::size_t k = 0; k < rs.size(); ++k) EXPECT_NEAR(rs[k], ev[k], 1e-7 * (1 + std::abs(ev[k])));
    const Complex lu = a.matrix().determinant();
    EXPECT_NEAR(det(a), lu.real(), 1e-9 * (1 + std::abs(lu)));
    EXPECT_NEAR(operator_norm(a), std::max(std::abs(ev.front()), std::abs(ev.back())), 1e-12 * (1 + std::abs(ev.back())));
  }
}

TEST(Hermitian, DecompositionReconstructs) {
  Rng rng(5);
  const HermitianMatrix a = random_psd(5, 3, rng);
  const auto e = eigen_decompose(a);
  const HermitianMatrix back = HermitianMatrix::from_spectrum(e.vectors, e.values);
  EXPECT_LT((back.matrix() - a.matrix()).cwiseAbs().maxCoeff(), 1e-10 * a.max_abs_entry());
}

TEST(Hermitian, BlockDiagonalEigenvalues) {
  const std::vector<double> d1{3.0, 1.0};
  const std::vector<HermitianMatrix> blocks{HermitianMatrix::diagonal(d1), HermitianMatrix::identity(2) * 2.0};
  const auto ev = eigenvalues(direct_sum(blocks));
  EXPECT_EQ(ev, (std::vector<double>{1.0, 2.0, 2.0, 3.0}));
}

TEST(Hermitian, PsdAndRank) {
  Rng rng(2);
  const HermitianMatrix a = random_psd(6, 2, rng);
  EXPECT_TRUE(is_psd(a));
  EXPECT_EQ(numerical_rank(a), 2);
  EXPECT_FALSE(is_psd(HermitianMatrix::identity(2) * -1.0));
  EXPECT_THROW(project_psd(HermitianMatrix::identity(2) * -1.0), Error);
  const std::vector<double> tiny{1.0, -1e-12};
  const auto ev = eigenvalues(project_psd(HermitianMatrix::diagonal(tiny)));
  EXPECT_GE(ev.front(), 0.0);
}

TEST(Hermitian, GramVectorsReproduceEntries) {
  Rng rng(8);
  const HermitianMatrix q = random_psd(5, 3, rng);
  const auto us = gram_vectors(q);
  ASSERT_EQ(us.size(), 5u);
  EXPECT_EQ(us.front().size(), 3);
  for (Index i = 0; i < 5; ++i) {
    for (Index j = 0; j < 5; ++j) {
      EXPECT_LT(std::abs(us[static_cast<std::size_t>(i)].dot(us[static_cast<std::size_t>(j)]) - q(i, j)), 1e-10);
    }
  }
}

TEST(Hermitian, DilationIsProjectionWithHalfDiagonal) {
  Rng rng(13);
  for (int t = 0; t < 10; ++t) {
    const Index n = 2 + t % 5;
    const HermitianMatrix z = random_zero_diagonal(n, rng);
    const HermitianMatrix tn = z * (1.0 / operator_norm(z));
    const HermitianMatrix q = dilation(tn);
    ASSERT_EQ(q.dim(), 2 * n);
    EXPECT_LT((q.matrix() * q.matrix() - q.matrix()).norm(), 1e-8);
    for (Index j = 0; j < 2 * n; ++j) EXPECT_NEAR(q(j, j).real(), 0.5, 1e-10);
  }
  const std::vector<double> diag{1.0, 0.0};
  EXPECT_THROW(dilation(HermitianMatrix::diagonal(diag)), Error);
}

TEST(Hermitian, Compress) {
  MatrixC m(3, 3);
  m << 1, 2, 3, 2, 4, 5, 3, 5, 6;
  const std::vector<Index> idx{0, 2};
  const HermitianMatrix c = compress(HermitianMatrix(m), idx);
  EXPECT_EQ(c.dim(), 2);
  EXPECT_EQ(c(0, 1), Complex(3.0));
  EXPECT_EQ(c(1, 1), Complex(6.0));
}
