#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "interlacing/mixedchar.hpp"

namespace interlacing {

/// One named invariant check. slack >= 0 exactly when the check passed.
struct Check {
  std::string name;
  bool pass = false;
  double slack = 0.0;
  std::string detail;
};

Check make_check(std::string name, double slack, std::string detail = {});

/// |det(A + v v^*) - det(A)(1 + v^* A^{-1} v)| / scale
double rank1_update_deviation(const HermitianMatrix& a, const VectorC& v);
/// |d/dt det(A + tB) at 0 - det(A) trace(A^{-1} B)| / scale, the derivative
/// read off an exact interpolation of det(A + kB) on k = 0..d.
double jacobi_deviation(const HermitianMatrix& a, const HermitianMatrix& b);
/// trace(AB) / (||A|| ||B||); nonnegative for PSD A, B.
double normalized_trace_product(const HermitianMatrix& a, const HermitianMatrix& b);
/// jameslee_identity_check divided by a scale of the terms involved.
double jameslee_relative_deviation(const HermitianMatrix& a, const RandomVectorSpec& spec);

/// Rank-one update, Jacobi, trace positivity and the expected rank-one update
/// on `trials` seeded random instances; one aggregated check per identity
/// (tolerance 1e-8 relative).
std::vector<Check> identity_suite(std::uint64_t seed, int trials);

/// Children-sum and common-interlacing checks over the whole tree.
std::vector<Check> tree_suite(std::span<const RandomVectorSpec> specs, std::uint64_t seed);

/// mixed_charpoly of the covariances against brute-force expectation (1e-9
/// relative) and real-rootedness of the result.
std::vector<Check> oracle_suite(std::span<const RandomVectorSpec> specs);

/// Falsification search on det(xI + sum z_i A_i) and its (1 - d/dz_i) images,
/// plus real-rootedness of mu.
std::vector<Check> stability_suite(const CovarianceList& as, std::uint64_t seed, int trials = 200);

}  // namespace interlacing
