#include <gtest/gtest.h>

#include <cmath>

#include "interlacing/error.hpp"
#include "interlacing/mixedchar.hpp"
#include "interlacing/random.hpp"

using namespace interlacing;

namespace {

double rel_gap(const RealUniPoly& a, const RealUniPoly& b) {
  const RealUniPoly diff = a - b;
  double dev = 0.0;
  for (double c : diff.coeffs()) dev = std::max(dev, std::abs(c));
  return dev / std::max(1.0, b.scale());
}

}  // namespace

TEST(RandomVectorSpec, Validation) {
  VectorC v = VectorC::Ones(2);
  EXPECT_THROW(RandomVectorSpec({Atom{v, 0.5}, Atom{v, 0.6}}), Error);
  EXPECT_THROW(RandomVectorSpec({Atom{v, -0.1}, Atom{v, 1.1}}), Error);
  EXPECT_THROW(RandomVectorSpec({Atom{v, 0.5}, Atom{VectorC::Ones(3), 0.5}}), Error);
  EXPECT_THROW(RandomVectorSpec(std::vector<Atom>{}), Error);
  const auto s = RandomVectorSpec::uniform({v, 2.0 * v});
  EXPECT_NEAR(s.expected_sq_norm(), 0.5 * 2 + 0.5 * 8, 1e-14);
}

TEST(MixedCharpoly, AgreesWithBruteForce) {
  Rng rng(17);
  for (int t = 0; t < 40; ++t) {
    const auto specs = random_specs(1 + t % 6, 1 + t % 4, 3, rng);
    const RealUniPoly bf = brute_force_expected_charpoly(specs);
    EXPECT_LE(rel_gap(mixed_charpoly(covariances(specs)), bf), 1e-9) << "instance " << t;
  }
}

TEST(MixedCharpoly, DeterministicVectorsGiveCharPoly) {
  Rng rng(1);
  std::vector<RandomVectorSpec> specs;
  HermitianMatrix s = HermitianMatrix::zero(3);
  for (int i = 0; i < 4; ++i) {
    const VectorC v = random_gaussian_vector(3, rng);
    specs.push_back(RandomVectorSpec::deterministic(v));
    s += rank1(v);
  }
  EXPECT_LE(rel_gap(mixed_charpoly(covariances(specs)), char_poly(s)), 1e-10);
}

TEST(MixedCharpoly, SingleMatrix) {
  Rng rng(6);
  const HermitianMatrix a = random_psd(4, 3, rng);
  // x^{d-1} (x - tr A)
  const RealUniPoly expect({0.0, 0.0, 0.0, -a.trace(), 1.0});
  EXPECT_LE(rel_gap(mixed_charpoly(CovarianceList({a})), expect), 1e-12);
}

TEST(MixedCharpoly, IsRealRooted) {
  Rng rng(19);
  for (int t = 0; t < 30; ++t) {
    std::vector<HermitianMatrix> as;
    const Index d = 1 + t % 5;
    for (int i = 0; i < 1 + t % 8; ++i) as.push_back(random_psd(d, 1 + i % d, rng));
    EXPECT_TRUE(is_real_rooted(mixed_charpoly(CovarianceList(as))));
  }
}

TEST(MixedCharpoly, RejectsMixedDimensions) {
  Rng rng(1);
  EXPECT_THROW(CovarianceList({random_psd(2, 1, rng), random_psd(3, 1, rng)}), Error);
}

TEST(MixedDiscriminant, SmallCases) {
  Rng rng(7);
  const HermitianMatrix a = random_psd(3, 2, rng);
  const HermitianMatrix b = random_psd(3, 3, rng);
  const HermitianMatrix c = random_psd(3, 1, rng);
  EXPECT_NEAR(mixed_discriminant(std::vector<HermitianMatrix>{a}), a.trace(), 1e-10 * a.trace());
  // D(A, A, A) = d! det A
  const double daaa = mixed_discriminant(std::vector<HermitianMatrix>{b, b, b});
  EXPECT_NEAR(daaa, 6.0 * det(b), 1e-9 * std::abs(daaa));
  // full inclusion-exclusion oracle
  const double dabc = mixed_discriminant(std::vector<HermitianMatrix>{a, b, c});
  const double ie = det(a + b + c) - det(a + b) - det(a + c) - det(b + c) + det(a) + det(b) + det(c);
  EXPECT_NEAR(dabc, ie, 1e-9 * (1 + std::abs(ie)));
  EXPECT_GE(dabc, -1e-12);
}

TEST(TreePolynomial, NothingRemainingIsCharPoly) {
  Rng rng(2);
  std::vector<VectorC> fixed{random_gaussian_vector(3, rng), random_gaussian_vector(3, rng)};
  const RealUniPoly p = tree_polynomial(fixed, CovarianceList{});
  EXPECT_LE(rel_gap(p, char_poly(rank1(fixed[0]) + rank1(fixed[1]))), 1e-12);
}

TEST(TreePolynomial, ChildrenAverageToParent) {
  Rng rng(23);
  const auto specs = random_specs(3, 2, 3, rng);
  const RealUniPoly parent = mixed_charpoly(covariances(specs));
  const CovarianceList rest(std::vector<HermitianMatrix>{covariance(specs[1]), covariance(specs[2])});
  RealUniPoly sum;
  for (const auto& a : specs[0].atoms()) {
    const std::vector<VectorC> fixed{a.value};
    sum += tree_polynomial(fixed, rest) * a.prob;
  }
  EXPECT_LE(rel_gap(sum, parent), 1e-10);
}

TEST(JamesLee, IdentityHolds) {
  Rng rng(31);
  for (int t = 0; t < 20; ++t) {
    const Index d = 1 + t % 4;
    const HermitianMatrix a = random_psd(d, d, rng) - random_psd(d, 1, rng);
    const auto specs = random_specs(1, d, 3, rng);
    const double scale = 1.0 + std::abs(det(a)) + std::pow(a.max_abs_entry() + covariance(specs[0]).max_abs_entry(), static_cast<double>(d));
    EXPECT_LE(jameslee_identity_check(a, specs[0]), 1e-8 * scale);
  }
}

TEST(BruteForce, SupportLimit) {
  std::vector<RandomVectorSpec> specs;
  std::vector<VectorC> vals(10, VectorC::Ones(1));
  for (int i = 0; i < 7; ++i) specs.push_back(RandomVectorSpec::uniform(vals));
  EXPECT_THROW(brute_force_expected_charpoly(specs), Error);
}
