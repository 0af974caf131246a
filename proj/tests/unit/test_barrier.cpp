#include <gtest/gtest.h>

#include <cmath>

#include "interlacing/barrier.hpp"
#include "interlacing/error.hpp"
#include "interlacing/random.hpp"

using namespace interlacing;

namespace {

CovarianceList isotropic(std::size_t m, Index d, std::uint64_t seed, double* eps) {
  Rng rng(seed);
  auto as = random_isotropic_covariances(m, d, d, rng);
  *eps = 0.0;
  for (const auto& a : as) *eps = std::max(*eps, a.trace());
  return CovarianceList(std::move(as));
}

}  // namespace

TEST(Barrier, DetFormMatchesGeneral) {
  double eps = 0.0;
  const CovarianceList as = isotropic(3, 2, 1, &eps);
  const MultiPoly p = det_poly(as.mats(), false);
  const std::vector<double> y{0.4, 0.9, 1.3};
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_NEAR(barrier_det_form(as, y, i), barrier_general(p, y, static_cast<int>(i)), 1e-9);
  }
  const std::vector<double> bad{-1.0, -1.0, -1.0};
  EXPECT_THROW(barrier_det_form(as, bad, 0), Error);
}

TEST(Barrier, GeneralZeroDenominator) {
  const MultiPoly p = MultiPoly::variable(1, 1, 0);
  const std::vector<double> z{0.0};
  EXPECT_THROW(barrier_general(p, z, 0), Error);
}

TEST(Barrier, ShiftLemma) {
  double eps = 0.0;
  const CovarianceList as = isotropic(3, 2, 2, &eps);
  const MultiPoly p = det_poly(as.mats(), false);
  const double t = std::sqrt(eps) + eps;
  const double delta = 1.0 + std::sqrt(eps);
  const std::vector<double> z(3, t);
  const ShiftReport rep = barrier_shift_check(p, z, 0, delta);
  EXPECT_TRUE(rep.pass);
  EXPECT_EQ(rep.slacks.size(), 3u);
  EXPECT_GE(rep.min_slack, -1e-8);
  // premise fails when the shift is too small for the barrier value
  EXPECT_THROW(barrier_shift_check(p, z, 0, 1.0 + 1e-9), Error);
}

TEST(Barrier, MonotoneConvex) {
  double eps = 0.0;
  const CovarianceList as = isotropic(3, 3, 3, &eps);
  const MultiPoly p = det_poly(as.mats(), false);
  const std::vector<double> z{0.5, 0.7, 0.6};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const auto rep = monotone_convex_check(p, z, i, j);
      EXPECT_TRUE(rep.pass) << i << " " << j << " first " << rep.first << " second " << rep.second;
      EXPECT_GE(rep.monotone_slack(), -1e-6);
      EXPECT_GE(rep.convex_slack(), -1e-6);
    }
  }
}

TEST(Barrier, ChainKeepsPointAboveRoots) {
  double eps = 0.0;
  const CovarianceList as = isotropic(3, 2, 4, &eps);
  const MultiPoly p = det_poly(as.mats(), false);
  const std::vector<double> z(3, 2.0);
  const auto ok = above_roots_chain_check(p, z, 1);
  ASSERT_TRUE(ok.has_value());
  EXPECT_TRUE(*ok);
}

TEST(BarrierTrace, SymbolicRun) {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    double eps = 0.0;
    const CovarianceList as = isotropic(3 + seed % 2, 2 + static_cast<Index>(seed % 2), seed + 10, &eps);
    const BarrierTrace tr = run_barrier_trace(as, eps);
    EXPECT_TRUE(tr.symbolic);
    ASSERT_EQ(tr.steps.size(), as.size() + 1);
    EXPECT_TRUE(tr.all_steps_ok());
    EXPECT_TRUE(tr.endpoint_ok());
    for (const auto& s : tr.steps) {
      EXPECT_TRUE(s.above_roots);
      EXPECT_TRUE(s.chain_ok);
    }
    EXPECT_NEAR(tr.final_root, max_root(mixed_charpoly(as)), 1e-7);
    EXPECT_NEAR(tr.bound, std::pow(1 + std::sqrt(eps), 2), 1e-14);
  }
}

TEST(BarrierTrace, EndpointOnlyAboveLimits) {
  double eps = 0.0;
  const CovarianceList as = isotropic(7, 3, 5, &eps);
  const BarrierTrace tr = run_barrier_trace(as, eps);
  EXPECT_FALSE(tr.symbolic);
  EXPECT_TRUE(tr.steps.empty());
  EXPECT_TRUE(tr.endpoint_ok());
}

TEST(BarrierTrace, Hypotheses) {
  Rng rng(1);
  const CovarianceList notiso({random_psd(2, 2, rng)});
  EXPECT_THROW(run_barrier_trace(notiso, 10.0), Error);
  double eps = 0.0;
  const CovarianceList as = isotropic(3, 2, 6, &eps);
  EXPECT_THROW(run_barrier_trace(as, eps * 0.5), Error);
  EXPECT_THROW(run_barrier_trace(as, -1.0), Error);
}
