#include "interlacing/verify.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "interlacing/error.hpp"
#include "interlacing/mpoly.hpp"
#include "interlacing/random.hpp"
#include "interlacing/solver.hpp"
#include "numeric_detail.hpp"

namespace interlacing {

namespace {

constexpr double kIdentityTol = 1e-8;

Complex lu_det(const MatrixC& m) { return Eigen::PartialPivLU<MatrixC>(m).determinant(); }

HermitianMatrix random_hermitian(Index d, Rng& rng) {
  MatrixC g(d, d);
  for (Index j = 0; j < d; ++j) g.col(j) = random_gaussian_vector(d, rng);
  return HermitianMatrix(MatrixC(0.5 * (g + g.adjoint())));
}

double worst(double a, double b) { return std::max(a, b); }

}  // namespace

Check make_check(std::string name, double slack, std::string detail) {
  return Check{std::move(name), slack >= 0.0, slack, std::move(detail)};
}

double rank1_update_deviation(const HermitianMatrix& a, const VectorC& v) {
  const MatrixC& am = a.matrix();
  const Complex lhs = lu_det(am + v * v.adjoint());
  const Complex da = lu_det(am);
  const Complex q = v.dot(Eigen::PartialPivLU<MatrixC>(am).solve(v));
  const Complex rhs = da * (1.0 + q);
  const double scale = std::max({1.0, std::abs(lhs), std::abs(da), std::abs(da * q)});
  return std::abs(lhs - rhs) / scale;
}

double jacobi_deviation(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.dim() != b.dim()) throw Error(Errc::DimensionMismatch, "matrices differ in dimension");
  const std::size_t n = static_cast<std::size_t>(a.dim()) + 1;
  std::vector<double> g(n);
  double scale = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    g[k] = lu_det(a.matrix() + static_cast<double>(k) * b.matrix()).real();
    scale = std::max(scale, std::abs(g[k]));
  }
  detail::nodes_to_monomial(g);
  const Complex da = lu_det(a.matrix());
  const Complex tr = Eigen::PartialPivLU<MatrixC>(a.matrix()).solve(b.matrix()).trace();
  const Complex rhs = da * tr;
  scale = std::max(scale, std::abs(rhs));
  return std::abs(g[1] - rhs) / scale;
}

double normalized_trace_product(const HermitianMatrix& a, const HermitianMatrix& b) {
  const double s = std::max(1e-300, operator_norm(a) * operator_norm(b));
  return (a.matrix() * b.matrix()).trace().real() / s;
}

double jameslee_relative_deviation(const HermitianMatrix& a, const RandomVectorSpec& spec) {
  double scale = 1.0;
  for (const auto& atom : spec.atoms()) scale = std::max(scale, std::abs(det(a - rank1(atom.value))));
  const HermitianMatrix c = covariance(spec);
  for (Index k = 0; k <= a.dim(); ++k) scale = std::max(scale, std::abs(det(a + c * static_cast<double>(k))));
  return jameslee_identity_check(a, spec) / scale;
}

std::vector<Check> identity_suite(std::uint64_t seed, int trials) {
  Rng rng(seed);
  std::uniform_int_distribution<Index> dim(1, 5);
  double r1 = 0.0;
  double jac = 0.0;
  double trp = 0.0;
  double jl = 0.0;
  for (int t = 0; t < trials; ++t) {
    const Index d = dim(rng);
    const HermitianMatrix a = random_hermitian(d, rng);
    r1 = worst(r1, rank1_update_deviation(a, random_gaussian_vector(d, rng)));
    jac = worst(jac, jacobi_deviation(a, random_hermitian(d, rng)));
    trp = std::min(trp, normalized_trace_product(random_psd(d, 1 + t % d, rng), random_psd(d, 1 + (t / 2) % d, rng)));
    const auto specs = random_specs(1, d, 3, rng);
    jl = worst(jl, jameslee_relative_deviation(a, specs.front()));
  }
  const std::string n = std::to_string(trials) + " trials";
  return {
      make_check("identities.rank1_update", kIdentityTol - r1, n),
      make_check("identities.jacobi", kIdentityTol - jac, n),
      make_check("identities.trace_positivity", trp + kIdentityTol, n),
      make_check("identities.expected_rank1_update", kIdentityTol - jl, n),
  };
}

std::vector<Check> tree_suite(std::span<const RandomVectorSpec> specs, std::uint64_t seed) {
  const TreeReport rep = verify_interlacing_tree(specs, -1, kDefaultInterlacingSamples, kDefaultRealRootTol, seed);
  std::size_t bad_sum = 0;
  std::size_t bad_il = 0;
  for (const auto& n : rep.nodes) {
    bad_sum += n.sum_ok ? 0 : 1;
    bad_il += n.interlacing_ok ? 0 : 1;
  }
  const std::string nodes = std::to_string(rep.nodes.size()) + " internal nodes";
  return {
      make_check("tree.children_sum", 1e-9 - rep.max_sum_deviation, nodes),
      make_check("tree.common_interlacing", -static_cast<double>(bad_il), nodes + ", " + std::to_string(bad_il) + " failed"),
  };
}

std::vector<Check> oracle_suite(std::span<const RandomVectorSpec> specs) {
  const RealUniPoly mu = mixed_charpoly(covariances(specs));
  const RealUniPoly bf = brute_force_expected_charpoly(specs);
  const RealUniPoly diff = mu - bf;
  double dev = 0.0;
  for (double c : diff.coeffs()) dev = std::max(dev, std::abs(c));
  dev /= std::max(1.0, bf.scale());
  return {
      make_check("oracle.coefficients", 1e-9 - dev, "max relative coefficient deviation " + std::to_string(dev)),
      make_check("oracle.real_rooted", 1e-6 - max_relative_imag(mu)),
  };
}

std::vector<Check> stability_suite(const CovarianceList& as, std::uint64_t seed, int trials) {
  std::vector<Check> out;
  const RealUniPoly mu = mixed_charpoly(as);
  out.push_back(make_check("stability.mu_real_rooted", 1e-6 - max_relative_imag(mu)));

  const double grid = std::pow(static_cast<double>(as.dim()) + 1.0, static_cast<double>(as.size()) + 1.0);
  if (static_cast<int>(as.size()) + 1 > kMaxPolyVars || grid > static_cast<double>(kMaxGridSize)) {
    out.push_back(make_check("stability.det_form", 0.0, "skipped: too many variables for the dense grid"));
    return out;
  }
  const MultiPoly p = det_poly(as.mats(), true);
  const auto hit = stability_falsifier(p, trials, seed);
  out.push_back(make_check("stability.det_form", hit ? -1.0 : 0.0, hit ? "zero found in the upper half plane" : ""));
  std::size_t bad = 0;
  for (int v = 1; v < p.nvars(); ++v) {
    if (stability_falsifier(p.one_minus_partial(v), trials, seed + static_cast<std::uint64_t>(v))) ++bad;
  }
  out.push_back(make_check("stability.one_minus_partial", -static_cast<double>(bad),
                           std::to_string(p.nvars() - 1) + " images, " + std::to_string(bad) + " falsified"));
  return out;
}

}  // namespace interlacing
