#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "interlacing/mixedchar.hpp"

namespace interlacing {

using Rng = std::mt19937_64;

/// Entries with independent standard normal real and imaginary parts.
VectorC random_gaussian_vector(Index d, Rng& rng);

/// G G^* for a d x rank Gaussian G.
HermitianMatrix random_psd(Index d, Index rank, Rng& rng);

/// Random PSD A_1..A_m with sum exactly I (up to rounding), built as
/// S^{-1/2} B_i S^{-1/2} with S = sum B_i. Ranks are drawn from 1..max_rank.
std::vector<HermitianMatrix> random_isotropic_covariances(std::size_t m, Index d, Index max_rank, Rng& rng);

/// Vectors u_1..u_m in C^d with sum u_i u_i^* = I (m >= d).
std::vector<VectorC> random_parseval(std::size_t m, Index d, Rng& rng);

/// m random vectors in C^d with supports drawn from 1..max_support and
/// random (positive) probabilities.
std::vector<RandomVectorSpec> random_specs(std::size_t m, Index d, std::size_t max_support, Rng& rng);

/// Random self-adjoint n x n matrix with zero diagonal.
HermitianMatrix random_zero_diagonal(Index n, Rng& rng);

/// m vectors of norm <= 1 in C^d with sum w_i w_i^* = eta I, where
/// m * (per-vector squared norm) = eta * d. For d = 1 these are scalars of
/// modulus sqrt(eta/m) with random phases (needs m >= eta); for d >= 2 a
/// harmonic frame with m = eta * d unit vectors, randomly rotated and phased.
std::vector<VectorC> random_weaver_system(Index d, std::size_t m, double eta, Rng& rng);

/// Haar-ish random unitary (QR of a Gaussian matrix with phase fix).
MatrixC random_unitary(Index d, Rng& rng);

}  // namespace interlacing
