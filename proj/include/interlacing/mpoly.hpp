#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "interlacing/hermitian.hpp"
#include "interlacing/upoly.hpp"

namespace interlacing {

inline constexpr int kMaxPolyVars = 8;
inline constexpr std::size_t kMaxGridSize = 1'000'000;

/// Dense multivariate polynomial with real coefficients in at most eight
/// variables and a common per-variable degree bound. Coefficients live on the
/// (max_deg+1)^nvars exponent grid, variable 0 varying fastest.
class MultiPoly {
 public:
  MultiPoly() : MultiPoly(0, 0) {}
  MultiPoly(int nvars, int max_deg);
  MultiPoly(int nvars, int max_deg, std::vector<double> coeffs);

  static MultiPoly constant(double c);
  /// The polynomial x_var in nvars variables.
  static MultiPoly variable(int nvars, int max_deg, int var);
  /// Embed a univariate polynomial as a one-variable MultiPoly.
  static MultiPoly from_univariate(const RealUniPoly& p);

  int nvars() const noexcept { return nvars_; }
  int max_deg() const noexcept { return max_deg_; }
  std::size_t grid_size() const noexcept { return coeffs_.size(); }
  const std::vector<double>& coeffs() const noexcept { return coeffs_; }

  double coeff(std::span<const int> exponents) const;
  void set_coeff(std::span<const int> exponents, double value);
  double scale() const noexcept;
  int total_degree() const noexcept;

  Complex eval(std::span<const Complex> point) const;
  double eval(std::span<const double> point) const;

  MultiPoly partial(int var) const;
  /// p - d/dx_var p
  MultiPoly one_minus_partial(int var) const;
  /// Set x_var = a; the result has nvars - 1 variables.
  MultiPoly restrict(int var, double a) const;
  /// t -> p(origin + t * direction) as a univariate polynomial.
  RealUniPoly along_line(std::span<const double> origin, std::span<const double> direction) const;
  /// t -> p(t, t, ..., t)
  RealUniPoly diagonal() const;
  /// Requires nvars == 1.
  RealUniPoly to_univariate() const;

  MultiPoly& operator+=(const MultiPoly& rhs);
  MultiPoly& operator-=(const MultiPoly& rhs);
  MultiPoly& operator*=(double s);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(MultiPoly a, double s) { return a *= s; }

 private:
  std::size_t index(std::span<const int> exponents) const;
  void check_var(int var) const;

  int nvars_;
  int max_deg_;
  std::vector<std::size_t> stride_;
  std::vector<double> coeffs_;
};

/// det(x I + sum_i z_i A_i) (include_x) or det(sum_i z_i A_i), recovered
/// exactly by tensor-product Newton interpolation on the grid {0..d}^vars.
/// Variable order: x first when present, then z_1..z_m.
MultiPoly det_poly(std::span<const HermitianMatrix> as, bool include_x);

/// Search for a zero of p with every coordinate in the open upper half plane.
/// Samples real base points a in (-10,10)^m and directions b with entries
/// log-uniform in (0.01,10), and looks for non-real roots of t -> p(a + t b);
/// a real-coefficient p is real stable iff all of these are real-rooted.
/// Returns the offending point when |p| there is below 1e-10 * scale.
std::optional<std::vector<Complex>> stability_falsifier(const MultiPoly& p, int trials, std::uint64_t seed);

/// Heuristic test that z lies above the roots of p (p > 0 on z + R^m_+):
/// p(z) > 0, every coordinate restriction has all roots left of zero, and p
/// stays positive on `rays` random nonnegative rays (32 samples each, up to
/// 10 (1+||z||)). When `det_form` carries A_1..A_m with p = det(sum y_i A_i),
/// membership is decided exactly by positive definiteness of sum z_i A_i.
bool above_roots_probe(const MultiPoly& p, std::span<const double> z, int rays, std::uint64_t seed,
                       std::span<const HermitianMatrix> det_form = {});

/// Exact above-roots test for det(sum y_i A_i) with PSD A_i.
bool above_roots_det_form(std::span<const HermitianMatrix> as, std::span<const double> z);

}  // namespace interlacing
