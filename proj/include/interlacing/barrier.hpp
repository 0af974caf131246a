#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "interlacing/mixedchar.hpp"
#include "interlacing/mpoly.hpp"

namespace interlacing {

/// Largest m and d for which the intermediate P_k are expanded symbolically.
inline constexpr std::size_t kSymbolicMaxVectors = 5;
inline constexpr Index kSymbolicMaxDim = 4;

struct BarrierStep {
  int k = 0;
  std::vector<double> point;           // x^k
  std::vector<double> barrier_values;  // Phi^i_{P_k}(x^k), i = 0..m-1
  bool above_roots = false;            // probe of P_k at x^k
  bool phi_ok = false;                 // every value <= phi + 1e-8
  double shift_slack = 0.0;            // min slack of the shift step P_{k-1} -> P_k
  bool chain_ok = false;               // x^{k-1} passes the probe for P_k
};

struct BarrierTrace {
  double epsilon = 0.0;
  double t = 0.0;
  double delta = 0.0;
  double phi = 0.0;
  std::vector<BarrierStep> steps;
  double final_root = 0.0;
  double bound = 0.0;  // (1 + sqrt(eps))^2
  bool symbolic = false;

  bool endpoint_ok() const { return final_root <= bound + 1e-8; }
  bool all_steps_ok() const;
};

struct BarrierOptions {
  bool symbolic = true;  // falls back to endpoint-only above the symbolic limits
  int probe_rays = 16;
  std::uint64_t seed = 0;
};

/// trace((sum_j y_j A_j)^{-1} A_i). Throws NotAboveRoots unless the sum is
/// positive definite (minimum eigenvalue above 1e-10).
double barrier_det_form(const CovarianceList& as, std::span<const double> y, std::size_t i);

/// d_i p(z) / p(z). Throws ZeroDenominator when |p(z)| <= 1e-12 * scale.
double barrier_general(const MultiPoly& p, std::span<const double> z, int i);

/// Replays the induction P_k = (1 - d/dy_k) P_{k-1} from P_0 = det(sum y_i A_i)
/// at the points x^k (t + delta on the first k coordinates, t elsewhere),
/// then bounds the largest root of P_m(x, .., x) = mu(x).
/// Throws HypothesisViolated unless sum A_i = I (1e-8) and trace A_i <= eps.
BarrierTrace run_barrier_trace(const CovarianceList& as, double epsilon, const BarrierOptions& opts = {});

struct ShiftReport {
  std::vector<double> before;  // Phi^i_p(z)
  std::vector<double> after;   // Phi^i_{p - d_j p}(z + delta e_j)
  std::vector<double> slacks;  // before - after
  double min_slack = 0.0;
  bool pass = false;           // min_slack >= -1e-8
};

/// If z is above the roots of p and Phi^j_p(z) <= 1 - 1/delta, then
/// Phi^i_{p - d_j p}(z + delta e_j) <= Phi^i_p(z) for every i.
/// Throws PreconditionFailed when either hypothesis fails.
ShiftReport barrier_shift_check(const MultiPoly& p, std::span<const double> z, int j, double delta,
                                int probe_rays = 16, std::uint64_t seed = 0);

struct MonotoneConvexReport {
  double first = 0.0;   // central difference of s -> Phi^i_p(z + s e_j)
  double second = 0.0;  // second central difference
  bool pass = false;    // first <= 1e-6 and second >= -1e-6
  double monotone_slack() const { return -first; }
  double convex_slack() const { return second; }
};

/// Finite-difference signs of d_j Phi^i and d_j^2 Phi^i at z with step h.
/// The difference quotients are formed from exact univariate restrictions
/// along e_j so that the cancellation in the numerator happens in the
/// polynomial coefficients, not in rounded values.
/// Throws PreconditionFailed when z fails the above-roots probe.
MonotoneConvexReport monotone_convex_check(const MultiPoly& p, std::span<const double> z, int i, int j,
                                           double h = 1e-5, int probe_rays = 16, std::uint64_t seed = 0);

/// If z passes the probe for p and Phi^i_p(z) < 1 - 1e-8, whether z also passes
/// the probe for p - d_i p. nullopt when the premise does not hold.
std::optional<bool> above_roots_chain_check(const MultiPoly& p, std::span<const double> z, int i,
                                            int probe_rays = 16, std::uint64_t seed = 0);

}  // namespace interlacing
