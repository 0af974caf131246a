#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "interlacing/mixedchar.hpp"

namespace interlacing {

/// A node of the assignment tree: the atoms fixed so far and the expected
/// characteristic polynomial of what remains (probability prefactor omitted).
struct AssignmentNode {
  std::vector<std::pair<std::size_t, std::size_t>> chosen;  // (vector index, atom index)
  RealUniPoly polynomial;
  double max_root = 0.0;
};

struct GreedyResult {
  AssignmentNode leaf;
  std::vector<double> path_roots;  // max_root at depth 0..m
  double root_bound = 0.0;         // max_root of the expected polynomial at the root
  double achieved = 0.0;           // ||sum of chosen w w^*||
  double epsilon = 0.0;            // max_i E||v_i||^2
  bool isotropic = false;          // sum of covariances = I within 1e-8
  std::optional<double> certified_bound;  // (1 + sqrt(eps))^2 when isotropic
  std::vector<std::string> warnings;
};

/// Walks the tree of partial assignments, always descending into the child
/// with the smallest largest root (ties to the lowest atom index).
GreedyResult greedy_assign(std::span<const RandomVectorSpec> specs);

struct PartitionResult {
  std::vector<std::vector<std::size_t>> parts;
  std::vector<double> part_norms;
  std::optional<double> certified_bound;
  double delta = 0.0;          // max ||u_i||^2
  int r = 0;
  double root_bound = 0.0;     // largest root at the top of the lifted tree
  std::vector<double> path_roots;
  bool vacuous = false;        // certified bound does not beat the trivial one
  std::vector<std::string> warnings;
};

/// Lifted random vectors sqrt(r) e_k (x) u_i, each k with probability 1/r.
std::vector<RandomVectorSpec> lift_for_partition(std::span<const VectorC> us, int r);

/// Expected characteristic polynomial of the lifted problem with vector i
/// fixed to block blocks[i] for i < blocks.size(), the rest still uniform.
/// Equals mixed_charpoly / tree_polynomial of the lifted specs, computed from
/// Gram minors of the u_i without cancellation.
RealUniPoly lifted_tree_polynomial(std::span<const VectorC> us, int r, std::span<const std::size_t> blocks);

/// Splits vectors with sum u_i u_i^* = I into r parts of norm at most
/// (1/sqrt(r) + sqrt(delta))^2. With strict set a non-isotropic input throws
/// NotDecomposition; otherwise it is partitioned with a warning and no
/// certificate.
PartitionResult partition_r(std::span<const VectorC> us, int r, bool strict = true);

/// Two-part split of vectors with ||w_i|| <= 1 and sum w_i w_i^* = eta I,
/// certified by eta (1/sqrt(2) + 1/sqrt(eta))^2, which is 16 at eta = 18.
PartitionResult weaver_partition(std::span<const VectorC> ws, double eta);

/// eta (1/sqrt(2) + 1/sqrt(eta))^2
double weaver_bound(double eta);

struct PavingResult {
  std::vector<std::vector<Index>> parts;
  std::vector<double> ratios;      // ||P T P|| / ||T|| per part
  double epsilon = 0.0;
  int r_used = 0;                  // parts per dilation partition
  int max_parts = 0;               // r_used^2
  double r_theorem = 0.0;          // (6/eps)^4
  double inner_bound = 0.0;        // (1/sqrt(r) + 1/sqrt(2))^2
  double certified_ratio = 0.0;    // 2 inner_bound - 1
  double measured_certificate = 0.0;  // 2 max(achieved dilation part norm) - 1
  bool vacuous = false;            // r^2 >= n or certified_ratio >= 1
  double norm = 0.0;               // ||T||
  std::vector<std::string> warnings;
};

/// Paves a zero-diagonal self-adjoint T by partitioning the Gram vectors of
/// dilation(T) and dilation(-T) into r parts each and intersecting.
/// r defaults to ceil(36 / eps^2).
PavingResult pave(const HermitianMatrix& t, double eps, std::optional<int> r_override = std::nullopt);

struct PavingRBound {
  long long r = 0;             // ceil(N / (sqrt(1+eps) - 1)^2)
  long long r_simplified = 0;  // ceil(6N / eps^2), valid for eps < 1
};

/// Throws BadParameters unless N >= 2 is even and eps > 0.
PavingRBound paving_r_bound(int n, double eps);

struct TreeNodeCheck {
  std::vector<std::size_t> path;  // atom indices fixed so far
  double sum_deviation = 0.0;     // relative coefficient gap of sum p_t q_t vs parent
  bool sum_ok = false;
  bool interlacing_ok = false;
};

struct TreeReport {
  std::vector<TreeNodeCheck> nodes;
  std::size_t failures = 0;
  double max_sum_deviation = 0.0;
  bool pass() const { return failures == 0; }
};

inline constexpr std::size_t kMaxTreeNodes = 100'000;

/// Checks every internal node down to depth_limit (all when negative): the
/// weighted children sum to the parent within 1e-9 and admit a common
/// interlacing. Throws BudgetExceeded beyond kMaxTreeNodes nodes.
TreeReport verify_interlacing_tree(std::span<const RandomVectorSpec> specs, int depth_limit = -1, int samples = 64,
                                   double tol = 1e-6, std::uint64_t seed = 0);

struct ExhaustiveResult {
  double min_max_root = 0.0;        // min over leaves of ||sum w w^*||
  std::vector<std::size_t> best;    // atom indices of a minimizing leaf
  std::size_t leaves = 0;
};

/// Every leaf of positive probability. Throws SupportTooLarge past 1e6 leaves.
ExhaustiveResult exhaustive_min_leaf(std::span<const RandomVectorSpec> specs);

}  // namespace interlacing
