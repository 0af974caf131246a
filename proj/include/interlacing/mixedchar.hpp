#pragma once

#include <span>
#include <vector>

#include "interlacing/hermitian.hpp"
#include "interlacing/upoly.hpp"

namespace interlacing {

/// One value of a finitely supported random vector.
struct Atom {
  VectorC value;
  double prob = 0.0;
};

/// Finite-support distribution of a random vector in C^d: values w_j taken
/// with probabilities p_j. Probabilities are nonnegative and sum to one.
class RandomVectorSpec {
 public:
  RandomVectorSpec() = default;
  explicit RandomVectorSpec(std::vector<Atom> atoms);

  /// The deterministic vector v (one atom, probability one).
  static RandomVectorSpec deterministic(const VectorC& v);
  /// Uniform over `values`.
  static RandomVectorSpec uniform(std::vector<VectorC> values);

  Index dim() const noexcept { return atoms_.empty() ? 0 : atoms_.front().value.size(); }
  std::size_t support() const noexcept { return atoms_.size(); }
  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  const Atom& atom(std::size_t j) const { return atoms_.at(j); }
  /// E ||v||^2
  double expected_sq_norm() const;

 private:
  std::vector<Atom> atoms_;
};

/// The covariances A_i of a list of random vectors, all PSD and of one
/// dimension. Slightly negative eigenvalues (>= -1e-9 relative) are clipped.
class CovarianceList {
 public:
  CovarianceList() = default;
  explicit CovarianceList(std::vector<HermitianMatrix> mats);

  Index dim() const noexcept { return mats_.empty() ? 0 : mats_.front().dim(); }
  std::size_t size() const noexcept { return mats_.size(); }
  bool empty() const noexcept { return mats_.empty(); }
  const std::vector<HermitianMatrix>& mats() const noexcept { return mats_; }
  const HermitianMatrix& operator[](std::size_t i) const { return mats_[i]; }
  HermitianMatrix sum() const;

 private:
  std::vector<HermitianMatrix> mats_;
};

/// Upper bound on subsets visited by mixed_charpoly.
inline constexpr std::size_t kMaxSubsetEnumeration = std::size_t{1} << 20;
inline constexpr std::size_t kMaxOutcomeEnumeration = 1'000'000;

/// E[v v^*] = sum_j p_j w_j w_j^*
HermitianMatrix covariance(const RandomVectorSpec& spec);
CovarianceList covariances(std::span<const RandomVectorSpec> specs);

/// Mixed discriminant D(B_1..B_k) of k <= d matrices of dimension d, with the
/// identity padding convention D(B_1..B_k) = D(B_1..B_k, I..I) / (d-k)!.
/// For k = d this is sum_{T subset [d]} (-1)^{d-|T|} det(sum_{i in T} B_i).
double mixed_discriminant(std::span<const HermitianMatrix> bs);

/// mu[A_1..A_m](x) = prod_i (1 - d/dz_i) det(xI + sum_i z_i A_i) at z = 0.
///
/// Homogeneity of det(xI + sum z_i A_i) means the coefficient of x^{d-k} only
/// sees monomials of z-degree k, and the square-free ones are isolated by
/// inclusion-exclusion over subsets T with |T| <= k:
///
///   mu(x) = sum_k (-1)^k x^{d-k} sum_{|T|<=k} (-1)^{k-|T|} C(m-|T|, k-|T|) e_k(spec(A_T))
///
/// where A_T = sum_{i in T} A_i and e_k is the k-th elementary symmetric
/// function. Only subsets of size <= min(m, d) are visited; coefficients of
/// x^{d-k} with k above rank(sum A_i) are exactly zero.
/// Throws TooManyVectors if more than kMaxSubsetEnumeration subsets are needed.
RealUniPoly mixed_charpoly(const CovarianceList& as);

/// E[det(xI - sum v_i v_i^*)] by enumerating every outcome tuple.
/// Throws SupportTooLarge when prod_i l_i > kMaxOutcomeEnumeration.
RealUniPoly brute_force_expected_charpoly(std::span<const RandomVectorSpec> specs);

/// E over the remaining vectors of char(sum_fixed w w^* + sum_rest v v^*),
/// without the probability prefactor of the fixed choices. Fixed vectors are
/// support-one random vectors, so this is mixed_charpoly of
/// (w_1 w_1^*, .., w_k w_k^*, A_{k+1}, .., A_m).
RealUniPoly tree_polynomial(std::span<const VectorC> fixed, const CovarianceList& remaining);

/// |E det(A - v v^*) - (1 - d/dt) det(A + t E[v v^*])|_{t=0}|, the right side
/// obtained by interpolating det(A + tC) on t = 0..d.
double jameslee_identity_check(const HermitianMatrix& a, const RandomVectorSpec& spec);

}  // namespace interlacing
