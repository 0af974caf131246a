#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "interlacing/upoly.hpp"

namespace interlacing {

using VectorC = Eigen::VectorXcd;
using MatrixC = Eigen::MatrixXcd;
using Index = Eigen::Index;

inline constexpr double kDefaultPsdTol = 1e-9;

/// Dense complex Hermitian matrix. Construction checks Hermitian symmetry
/// within 1e-12 * max|entry| and stores the exactly symmetrized matrix, so
/// diagonal entries are real.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(const MatrixC& entries);
  explicit HermitianMatrix(const Eigen::MatrixXd& entries) : HermitianMatrix(MatrixC(entries.cast<Complex>())) {}

  static HermitianMatrix zero(Index d);
  static HermitianMatrix identity(Index d);
  static HermitianMatrix diagonal(std::span<const double> diag);
  /// Assemble from spectral data V diag(values) V^*.
  static HermitianMatrix from_spectrum(const MatrixC& vectors, std::span<const double> values);

  Index dim() const noexcept { return m_.rows(); }
  const MatrixC& matrix() const noexcept { return m_; }
  Complex operator()(Index j, Index k) const { return m_(j, k); }
  double trace() const { return m_.trace().real(); }
  double max_abs_entry() const;

  HermitianMatrix& operator+=(const HermitianMatrix& rhs);
  HermitianMatrix& operator-=(const HermitianMatrix& rhs);
  HermitianMatrix& operator*=(double s);
  friend HermitianMatrix operator+(HermitianMatrix a, const HermitianMatrix& b) { return a += b; }
  friend HermitianMatrix operator-(HermitianMatrix a, const HermitianMatrix& b) { return a -= b; }
  friend HermitianMatrix operator*(HermitianMatrix a, double s) { return a *= s; }
  friend HermitianMatrix operator*(double s, HermitianMatrix a) { return a *= s; }
  HermitianMatrix operator-() const { return *this * -1.0; }

 private:
  struct Trusted {};
  HermitianMatrix(MatrixC entries, Trusted) : m_(std::move(entries)) {}
  friend HermitianMatrix rank1(const VectorC& v);

  MatrixC m_;
};

struct EigenDecomposition {
  std::vector<double> values;  // nondecreasing
  MatrixC vectors;             // column j pairs with values[j]
};

/// v v^*
HermitianMatrix rank1(const VectorC& v);

/// Eigenvalues in nondecreasing order. Block-diagonal structure (exact zero
/// coupling) is detected and each block solved separately.
std::vector<double> eigenvalues(const HermitianMatrix& m);
EigenDecomposition eigen_decompose(const HermitianMatrix& m);

double operator_norm(const HermitianMatrix& m);

/// det(xI - M), assembled from the eigenvalues. Eigenvalues below the solver
/// noise floor (1e-13 * ||M||) are taken to be exactly zero.
RealUniPoly char_poly(const HermitianMatrix& m);

double det(const HermitianMatrix& m);

bool is_psd(const HermitianMatrix& m, double tol = kDefaultPsdTol);

/// Clip eigenvalues in [-tol (1+||M||), 0) to zero; throws NotPSD below that.
HermitianMatrix project_psd(const HermitianMatrix& m, double tol = kDefaultPsdTol);

/// Numerical rank: eigenvalues with |lambda| > rel_tol * max(1, ||M||).
Index numerical_rank(const HermitianMatrix& m, double rel_tol = 1e-12);

HermitianMatrix direct_sum(std::span<const HermitianMatrix> blocks);

/// Vectors u_1..u_m in C^n (n = rank Q) with u_i^* u_j = Q[i][j].
std::vector<VectorC> gram_vectors(const HermitianMatrix& q);

/// The 2n x 2n projection 1/2 [[I+T, S], [S, I-T]] with S = (I - T^2)^{1/2}
/// for a zero-diagonal contraction T. Its diagonal is constant 1/2.
HermitianMatrix dilation(const HermitianMatrix& t);

/// Principal submatrix on the given (sorted) index set.
HermitianMatrix compress(const HermitianMatrix& m, std::span<const Index> indices);

}  // namespace interlacing
