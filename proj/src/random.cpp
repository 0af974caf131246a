#include "interlacing/random.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "interlacing/error.hpp"

namespace interlacing {

namespace {

MatrixC inverse_sqrt(const HermitianMatrix& s) {
  const EigenDecomposition ed = eigen_decompose(s);
  std::vector<double> v;
  for (double l : ed.values) {
    if (!(l > 0.0)) throw Error(Errc::NotPSD, "frame operator is singular");
    v.push_back(1.0 / std::sqrt(l));
  }
  return HermitianMatrix::from_spectrum(ed.vectors, v).matrix();
}

}  // namespace

VectorC random_gaussian_vector(Index d, Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  VectorC v(d);
  for (Index i = 0; i < d; ++i) {
    const double re = n(rng);
    const double im = n(rng);
    v(i) = Complex(re, im);
  }
  return v;
}

HermitianMatrix random_psd(Index d, Index rank, Rng& rng) {
  HermitianMatrix s = HermitianMatrix::zero(d);
  for (Index k = 0; k < rank; ++k) s += rank1(random_gaussian_vector(d, rng));
  return s;
}

std::vector<HermitianMatrix> random_isotropic_covariances(std::size_t m, Index d, Index max_rank, Rng& rng) {
  std::uniform_int_distribution<Index> rk(1, std::max<Index>(1, max_rank));
  std::vector<HermitianMatrix> bs;
  HermitianMatrix s = HermitianMatrix::zero(d);
  for (std::size_t i = 0; i < m; ++i) {
    bs.push_back(random_psd(d, rk(rng), rng));
    s += bs.back();
  }
  const MatrixC w = inverse_sqrt(s);
  std::vector<HermitianMatrix> out;
  for (const auto& b : bs) out.emplace_back(MatrixC(w * b.matrix() * w));
  return out;
}

std::vector<VectorC> random_parseval(std::size_t m, Index d, Rng& rng) {
  if (m < static_cast<std::size_t>(d)) throw Error(Errc::DimensionMismatch, "need at least d vectors");
  std::vector<VectorC> g;
  HermitianMatrix s = HermitianMatrix::zero(d);
  for (std::size_t i = 0; i < m; ++i) {
    g.push_back(random_gaussian_vector(d, rng));
    s += rank1(g.back());
  }
  const MatrixC w = inverse_sqrt(s);
  for (auto& v : g) v = w * v;
  return g;
}

std::vector<RandomVectorSpec> random_specs(std::size_t m, Index d, std::size_t max_support, Rng& rng) {
  std::uniform_int_distribution<std::size_t> sup(1, std::max<std::size_t>(1, max_support));
  std::uniform_real_distribution<double> w(0.2, 1.0);
  std::vector<RandomVectorSpec> out;
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t l = sup(rng);
    std::vector<double> p(l);
    double total = 0.0;
    for (double& x : p) total += (x = w(rng));
    std::vector<Atom> atoms;
    double acc = 0.0;
    for (std::size_t j = 0; j < l; ++j) {
      const double pj = j + 1 == l ? 1.0 - acc : p[j] / total;
      acc += pj;
      atoms.push_back(Atom{random_gaussian_vector(d, rng) * (1.0 / std::sqrt(static_cast<double>(d))), pj});
    }
    out.emplace_back(std::move(atoms));
  }
  return out;
}

HermitianMatrix random_zero_diagonal(Index n, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  MatrixC t = MatrixC::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      const double re = g(rng);
      const double im = g(rng);
      t(i, j) = Complex(re, im);
      t(j, i) = std::conj(t(i, j));
    }
  }
  return HermitianMatrix(t);
}

MatrixC random_unitary(Index d, Rng& rng) {
  MatrixC g(d, d);
  for (Index j = 0; j < d; ++j) g.col(j) = random_gaussian_vector(d, rng);
  Eigen::HouseholderQR<MatrixC> qr(g);
  MatrixC q = qr.householderQ() * MatrixC::Identity(d, d);
  const MatrixC r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < d; ++j) {
    const double a = std::abs(r(j, j));
    if (a > 0.0) q.col(j) *= r(j, j) / a;
  }
  return q;
}

std::vector<VectorC> random_weaver_system(Index d, std::size_t m, double eta, Rng& rng) {
  std::uniform_real_distribution<double> ang(0.0, 2.0 * std::numbers::pi);
  std::vector<VectorC> out;
  if (d == 1) {
    if (static_cast<double>(m) < eta) throw Error(Errc::BadParameters, "need m >= eta scalars of modulus <= 1");
    const double r = std::sqrt(eta / static_cast<double>(m));
    for (std::size_t i = 0; i < m; ++i) {
      VectorC v(1);
      v(0) = std::polar(r, ang(rng));
      out.push_back(std::move(v));
    }
    return out;
  }
  if (std::abs(static_cast<double>(m) - eta * static_cast<double>(d)) > 1e-9) {
    throw Error(Errc::BadParameters, "harmonic frame needs m = eta d");
  }
  const MatrixC u = random_unitary(d, rng);
  const double w = 2.0 * std::numbers::pi / static_cast<double>(m);
  for (std::size_t j = 0; j < m; ++j) {
    VectorC v(d);
    for (Index k = 0; k < d; ++k) v(k) = std::polar(1.0 / std::sqrt(static_cast<double>(d)), w * static_cast<double>(j * static_cast<std::size_t>(k)));
    v = u * v;
    v *= std::polar(1.0, ang(rng));
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace interlacing
