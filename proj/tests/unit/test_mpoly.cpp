#include <gtest/gtest.h>

#include <cmath>

#include "interlacing/error.hpp"
#include "interlacing/mpoly.hpp"
#include "interlacing/random.hpp"

using namespace interlacing;

namespace {

// 1 + 2 x0 + 3 x1 + 4 x0 x1 + x0^2
MultiPoly sample() {
  MultiPoly p(2, 2);
  const int e00[] = {0, 0}, e10[] = {1, 0}, e01[] = {0, 1}, e11[] = {1, 1}, e20[] = {2, 0};
  p.set_coeff(e00, 1.0);
  p.set_coeff(e10, 2.0);
  p.set_coeff(e01, 3.0);
  p.set_coeff(e11, 4.0);
  p.set_coeff(e20, 1.0);
  return p;
}

double sample_at(double x, double y) { return 1 + 2 * x + 3 * y + 4 * x * y + x * x; }

}  // namespace

TEST(MultiPoly, EvalAndShape) {
  const MultiPoly p = sample();
  EXPECT_EQ(p.nvars(), 2);
  EXPECT_EQ(p.grid_size(), 9u);
  EXPECT_EQ(p.total_degree(), 2);
  const double z[] = {0.5, -1.5};
  EXPECT_DOUBLE_EQ(p.eval(z), sample_at(0.5, -1.5));
  const Complex zc[] = {{0.0, 1.0}, {1.0, 0.0}};
  EXPECT_LT(std::abs(p.eval(zc) - Complex(3.0, 6.0)), 1e-14);
}

TEST(MultiPoly, TooManyVariables) {
  EXPECT_THROW(MultiPoly(kMaxPolyVars + 1, 1), Error);
  EXPECT_THROW(MultiPoly(8, 10), Error);
}

TEST(MultiPoly, PartialAndShift) {
  const MultiPoly p = sample();
  const double z[] = {0.3, 0.7};
  EXPECT_DOUBLE_EQ(p.partial(0).eval(z), 2 + 4 * 0.7 + 2 * 0.3);
  EXPECT_DOUBLE_EQ(p.partial(1).eval(z), 3 + 4 * 0.3);
  EXPECT_NEAR(p.one_minus_partial(1).eval(z), sample_at(0.3, 0.7) - (3 + 4 * 0.3), 1e-14);
  EXPECT_THROW(p.partial(2), Error);
}

TEST(MultiPoly, RestrictLineDiagonal) {
  const MultiPoly p = sample();
  const RealUniPoly r = p.restrict(0, 2.0).to_univariate();
  EXPECT_NEAR(r(1.5), sample_at(2.0, 1.5), 1e-13);
  const double o[] = {1.0, -1.0}, dir[] = {0.5, 2.0};
  const RealUniPoly l = p.along_line(o, dir);
  EXPECT_NEAR(l(0.8), sample_at(1.4, 0.6), 1e-13);
  EXPECT_NEAR(p.diagonal()(1.25), sample_at(1.25, 1.25), 1e-13);
}

TEST(DetPoly, MatchesDeterminantAtRandomPoints) {
  Rng rng(21);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int t = 0; t < 10; ++t) {
    const Index d = 1 + t % 3;
    const std::size_t m = 1 + static_cast<std::size_t>(t % 4);
    std::vector<HermitianMatrix> as;
    for (std::size_t i = 0; i < m; ++i) as.push_back(random_psd(d, 1 + (t + static_cast<int>(i)) % d, rng));
    for (bool with_x : {false, true}) {
      const MultiPoly p = det_poly(as, with_x);
      ASSERT_EQ(p.nvars(), static_cast<int>(m) + (with_x ? 1 : 0));
      for (int s = 0; s < 5; ++s) {
        std::vector<double> z(static_cast<std::size_t>(p.nvars()));
        for (double& v : z) v = u(rng);
        MatrixC acc = MatrixC::Zero(d, d);
        std::size_t off = 0;
        if (with_x) {
          acc += z[0] * MatrixC::Identity(d, d);
          off = 1;
        }
        for (std::size_t i = 0; i < m; ++i) acc += z[off + i] * as[i].matrix();
        const double expect = acc.determinant().real();
        const double mag = std::max(1.0, p.scale()) * std::pow(2.0 * static_cast<double>(z.size()) + 1.0, static_cast<double>(d));
        EXPECT_NEAR(p.eval(z), expect, 1e-12 * mag);
      }
    }
  }
}

TEST(Stability, DetPolyHasNoFalsifier) {
  Rng rng(4);
  std::vector<HermitianMatrix> as;
  for (int i = 0; i < 3; ++i) as.push_back(random_psd(3, 2, rng));
  const MultiPoly p = det_poly(as, true);
  EXPECT_FALSE(stability_falsifier(p, 100, 1).has_value());
  EXPECT_FALSE(stability_falsifier(p.one_minus_partial(1), 100, 2).has_value());
}

TEST(Stability, FindsZeroOfUnstablePolynomial) {
  // x0^2 + x1^2 + 1 vanishes at (i/sqrt2, i/sqrt2)
  MultiPoly p(2, 2);
  const int e20[] = {2, 0}, e02[] = {0, 2}, e00[] = {0, 0};
  p.set_coeff(e20, 1.0);
  p.set_coeff(e02, 1.0);
  p.set_coeff(e00, 1.0);
  EXPECT_TRUE(stability_falsifier(p, 100, 0).has_value());
}

TEST(AboveRoots, ProbeAgreesWithDetForm) {
  Rng rng(9);
  std::vector<HermitianMatrix> as;
  for (int i = 0; i < 3; ++i) as.push_back(random_psd(2, 1, rng));
  as.push_back(HermitianMatrix::identity(2));
  const MultiPoly p = det_poly(as, false);
  const std::vector<double> inside{0.1, 0.2, 0.3, 0.5};
  EXPECT_TRUE(above_roots_det_form(as, inside));
  EXPECT_TRUE(above_roots_probe(p, inside, 16, 0));
  EXPECT_TRUE(above_roots_probe(p, inside, 16, 0, as));
  const std::vector<double> outside{0.0, 0.0, 0.0, -0.5};
  EXPECT_FALSE(above_roots_det_form(as, outside));
  EXPECT_FALSE(above_roots_probe(p, outside, 16, 0));
}
