#pragma once

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace interlacing {

using Complex = std::complex<double>;

/// Univariate polynomial with real coefficients stored in ascending degree
/// order. Trailing (high-degree) zeros are trimmed, so the leading coefficient
/// of a nonzero polynomial is never zero. The zero polynomial has degree -1.
class RealUniPoly {
 public:
  RealUniPoly() = default;
  explicit RealUniPoly(std::vector<double> coeffs);
  RealUniPoly(std::initializer_list<double> coeffs);

  static RealUniPoly constant(double c);
  /// x - root
  static RealUniPoly linear(double root);
  /// lead * prod_j (x - roots[j])
  static RealUniPoly from_roots(std::span<const double> roots, double lead = 1.0);

  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  const std::vector<double>& coeffs() const noexcept { return coeffs_; }
  /// Coefficient of x^k; zero beyond the degree.
  double coeff(int k) const noexcept;
  double leading() const noexcept { return coeffs_.empty() ? 0.0 : coeffs_.back(); }
  /// max_k |c_k|; zero for the zero polynomial.
  double scale() const noexcept;

  double operator()(double x) const noexcept;
  Complex operator()(Complex x) const noexcept;

  RealUniPoly derivative() const;
  /// p(-x)
  RealUniPoly reflect() const;

  RealUniPoly& operator+=(const RealUniPoly& rhs);
  RealUniPoly& operator-=(const RealUniPoly& rhs);
  RealUniPoly& operator*=(double s);

  friend RealUniPoly operator+(RealUniPoly a, const RealUniPoly& b) { return a += b; }
  friend RealUniPoly operator-(RealUniPoly a, const RealUniPoly& b) { return a -= b; }
  friend RealUniPoly operator*(RealUniPoly a, double s) { return a *= s; }
  friend RealUniPoly operator*(double s, RealUniPoly a) { return a *= s; }
  friend RealUniPoly operator*(const RealUniPoly& a, const RealUniPoly& b);

  friend bool operator==(const RealUniPoly&, const RealUniPoly&) = default;

 private:
  void trim();
  std::vector<double> coeffs_;
};

inline constexpr double kDefaultRealRootTol = 1e-6;
inline constexpr int kDefaultInterlacingSamples = 64;

/// All roots with multiplicity. Exact zero low-order coefficients are split
/// off as exact zero roots; the remainder goes through a balanced companion
/// matrix eigensolve and one guarded Newton step per root.
/// Throws Error(PreconditionFailed) for degree < 1.
std::vector<Complex> roots(const RealUniPoly& p);

/// Roots of a real-rooted polynomial as sorted reals. Clusters of roots that
/// are numerically a multiple real root are snapped to their centroid.
/// Throws Error(NotRealRooted) when that is not possible at `tol`.
std::vector<double> real_roots(const RealUniPoly& p, double tol = kDefaultRealRootTol);

/// True iff every root is real at relative tolerance `tol` (|Im z| <= tol (1+|z|)),
/// after merging numerically multiple roots.
bool is_real_rooted(const RealUniPoly& p, double tol = kDefaultRealRootTol);

/// Largest |Im z| / (1+|z|) over roots, after multiple-root merging.
double max_relative_imag(const RealUniPoly& p);

/// Largest root of a real-rooted polynomial. Refined by a monotone Newton
/// descent started above every root, which never undershoots the true root in
/// exact arithmetic, with a bisection fallback on sign changes.
double max_root(const RealUniPoly& p, double tol = kDefaultRealRootTol);

/// Largest real part over all roots; no real-rootedness requirement.
double max_real_part(const RealUniPoly& p);

/// Does g interlace f? Requires deg g = deg f - 1 (Errc::DegreeMismatch).
bool interlaces(const RealUniPoly& g, const RealUniPoly& f, double tol = kDefaultRealRootTol);

/// sum_i lambdas[i] * fs[i]; lambdas must be a probability vector.
RealUniPoly convex_combo(std::span<const RealUniPoly> fs, std::span<const double> lambdas);

/// Falsification test for a common interlacing: every sampled convex
/// combination (vertices, pairwise midpoints, `samples` uniform simplex points)
/// must be real-rooted at `tol`.
bool common_interlacing_check(std::span<const RealUniPoly> fs,
                              int samples = kDefaultInterlacingSamples,
                              double tol = kDefaultRealRootTol, std::uint64_t seed = 0);

}  // namespace interlacing
