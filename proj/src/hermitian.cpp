#include "interlacing/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "interlacing/error.hpp"

namespace interlacing {

namespace {

// Connected components of the exact nonzero pattern of m.
std::vector<std::vector<Index>> coupling_blocks(const MatrixC& m) {
  const Index n = m.rows();
  std::vector<Index> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), Index{0});
  auto find = [&](Index a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (Index j = 0; j < n; ++j) {
    for (Index k = j + 1; k < n; ++k) {
      if (m(j, k) != Complex{0.0, 0.0}) parent[find(j)] = find(k);
    }
  }
  std::vector<std::vector<Index>> blocks;
  std::vector<Index> slot(static_cast<std::size_t>(n), -1);
  for (Index j = 0; j < n; ++j) {
    const Index r = find(j);
    if (slot[r] < 0) {
      slot[r] = static_cast<Index>(blocks.size());
      blocks.emplace_back();
    }
    blocks[slot[r]].push_back(j);
  }
  return blocks;
}

MatrixC submatrix(const MatrixC& m, std::span<const Index> idx) {
  const Index k = static_cast<Index>(idx.size());
  MatrixC s(k, k);
  for (Index a = 0; a < k; ++a) {
    for (Index b = 0; b < k; ++b) s(a, b) = m(idx[a], idx[b]);
  }
  return s;
}

EigenDecomposition solve_block(const MatrixC& m, bool want_vectors) {
  EigenDecomposition out;
  if (m.rows() == 1) {
    out.values = {m(0, 0).real()};
    if (want_vectors) out.vectors = MatrixC::Identity(1, 1);
    return out;
  }
  Eigen::SelfAdjointEigenSolver<MatrixC> es(m, want_vectors ? Eigen::ComputeEigenvectors
                                                            : Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw Error(Errc::IterationFailure, "Hermitian eigensolver did not converge");
  out.values.assign(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  if (want_vectors) out.vectors = es.eigenvectors();
  return out;
}

EigenDecomposition decompose(const HermitianMatrix& h, bool want_vectors) {
  const MatrixC& m = h.matrix();
  const Index n = m.rows();
  if (n == 0) return {};
  const auto blocks = coupling_blocks(m);
  if (blocks.size() == 1) return solve_block(m, want_vectors);

  std::vector<std::pair<double, VectorC>> pairs;
  pairs.reserve(static_cast<std::size_t>(n));
  for (const auto& idx : blocks) {
    const EigenDecomposition part = solve_block(submatrix(m, idx), want_vectors);
    for (std::size_t j = 0; j < part.values.size(); ++j) {
      VectorC v;
      if (want_vectors) {
        v = VectorC::Zero(n);
        for (std::size_t a = 0; a < idx.size(); ++a) v(idx[a]) = part.vectors(static_cast<Index>(a), static_cast<Index>(j));
      }
      pairs.emplace_back(part.values[j], std::move(v));
    }
  }
  std::stable_sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  EigenDecomposition out;
  out.values.reserve(pairs.size());
  if (want_vectors) out.vectors.resize(n, n);
  for (std::size_t j = 0; j < pairs.size(); ++j) {
    out.values.push_back(pairs[j].first);
    if (want_vectors) out.vectors.col(static_cast<Index>(j)) = pairs[j].second;
  }
  return out;
}

}  // namespace

HermitianMatrix::HermitianMatrix(const MatrixC& entries) {
  if (entries.rows() != entries.cols()) throw Error(Errc::DimensionMismatch, "matrix is not square");
  if (entries.rows() < 1) throw Error(Errc::DimensionMismatch, "matrix has dimension zero");
  double max_abs = 0.0;
  for (Index j = 0; j < entries.rows(); ++j) {
    for (Index k = 0; k < entries.cols(); ++k) {
      const Complex z = entries(j, k);
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw Error(Errc::NotHermitian, "non-finite matrix entry");
      }
      max_abs = std::max(max_abs, std::abs(z));
    }
  }
  const double tol = 1e-12 * max_abs;
  for (Index j = 0; j < entries.rows(); ++j) {
    for (Index k = j; k < entries.cols(); ++k) {
      if (std::abs(entries(j, k) - std::conj(entries(k, j))) > tol) {
        throw Error(Errc::NotHermitian, "entries (" + std::to_string(j) + "," + std::to_string(k) + ") not conjugate-symmetric");
      }
    }
  }
  m_ = 0.5 * (entries + entries.adjoint());
  for (Index j = 0; j < m_.rows(); ++j) m_(j, j) = Complex{m_(j, j).real(), 0.0};
}

HermitianMatrix HermitianMatrix::zero(Index d) { return HermitianMatrix(MatrixC::Zero(d, d), Trusted{}); }

HermitianMatrix HermitianMatrix::identity(Index d) {
  return HermitianMatrix(MatrixC::Identity(d, d), Trusted{});
}

HermitianMatrix HermitianMatrix::diagonal(std::span<const double> diag) {
  MatrixC m = MatrixC::Zero(static_cast<Index>(diag.size()), static_cast<Index>(diag.size()));
  for (std::size_t j = 0; j < diag.size(); ++j) m(static_cast<Index>(j), static_cast<Index>(j)) = diag[j];
  return HermitianMatrix(m);
}

HermitianMatrix HermitianMatrix::from_spectrum(const MatrixC& vectors, std::span<const double> values) {
  Eigen::VectorXd lam = Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Index>(values.size()));
  MatrixC m = vectors * lam.cast<Complex>().asDiagonal() * vectors.adjoint();
  m = 0.5 * (m + m.adjoint());
  for (Index j = 0; j < m.rows(); ++j) m(j, j) = Complex{m(j, j).real(), 0.0};
  return HermitianMatrix(std::move(m), Trusted{});
}

double HermitianMatrix::max_abs_entry() const { return m_.size() == 0 ? 0.0 : m_.cwiseAbs().maxCoeff(); }

HermitianMatrix& HermitianMatrix::operator+=(const HermitianMatrix& rhs) {
  if (rhs.dim() != dim()) throw Error(Errc::DimensionMismatch, "matrix sum of different dimensions");
  m_ += rhs.m_;
  return *this;
}

HermitianMatrix& HermitianMatrix::operator-=(const HermitianMatrix& rhs) {
  if (rhs.dim() != dim()) throw Error(Errc::DimensionMismatch, "matrix difference of different dimensions");
  m_ -= rhs.m_;
  return *this;
}

HermitianMatrix& HermitianMatrix::operator*=(double s) {
  m_ *= s;
  return *this;
}

HermitianMatrix rank1(const VectorC& v) {
  MatrixC m = v * v.adjoint();
  for (Index j = 0; j < m.rows(); ++j) m(j, j) = Complex{std::norm(v(j)), 0.0};
  return HermitianMatrix(std::move(m), HermitianMatrix::Trusted{});
}

std::vector<double> eigenvalues(const HermitianMatrix& m) { return decompose(m, false).values; }

EigenDecomposition eigen_decompose(const HermitianMatrix& m) { return decompose(m, true); }

double operator_norm(const HermitianMatrix& m) {
  const auto ev = eigenvalues(m);
  if (ev.empty()) return 0.0;
  return std::max(std::abs(ev.front()), std::abs(ev.back()));
}

RealUniPoly char_poly(const HermitianMatrix& m) {
  std::vector<double> ev = eigenvalues(m);
  double norm = 0.0;
  for (double l : ev) norm = std::max(norm, std::abs(l));
  for (double& l : ev) {
    if (std::abs(l) <= 1e-13 * norm) l = 0.0;
  }
  return RealUniPoly::from_roots(ev);
}

double det(const HermitianMatrix& m) {
  double p = 1.0;
  for (double l : eigenvalues(m)) p *= l;
  return p;
}

bool is_psd(const HermitianMatrix& m, double tol) {
  if (tol < 0.0) throw Error(Errc::PreconditionFailed, "negative tolerance");
  const auto ev = eigenvalues(m);
  const double norm = std::max(std::abs(ev.front()), std::abs(ev.back()));
  return ev.front() >= -tol * (1.0 + norm);
}

HermitianMatrix project_psd(const HermitianMatrix& m, double tol) {
  EigenDecomposition ed = eigen_decompose(m);
  const double norm = std::max(std::abs(ed.values.front()), std::abs(ed.values.back()));
  if (ed.values.front() >= 0.0) return m;
  if (ed.values.front() < -tol * (1.0 + norm)) {
    throw Error(Errc::NotPSD, "eigenvalue " + std::to_string(ed.values.front()));
  }
  for (double& l : ed.values) l = std::max(l, 0.0);
  return HermitianMatrix::from_spectrum(ed.vectors, ed.values);
}

Index numerical_rank(const HermitianMatrix& m, double rel_tol) {
  const auto ev = eigenvalues(m);
  double norm = 0.0;
  for (double l : ev) norm = std::max(norm, std::abs(l));
  const double cut = rel_tol * std::max(1.0, norm);
  return static_cast<Index>(std::count_if(ev.begin(), ev.end(), [&](double l) { return std::abs(l) > cut; }));
}

HermitianMatrix direct_sum(std::span<const HermitianMatrix> blocks) {
  Index n = 0;
  for (const auto& b : blocks) n += b.dim();
  MatrixC m = MatrixC::Zero(n, n);
  Index off = 0;
  for (const auto& b : blocks) {
    m.block(off, off, b.dim(), b.dim()) = b.matrix();
    off += b.dim();
  }
  return HermitianMatrix(m);
}

std::vector<VectorC> gram_vectors(const HermitianMatrix& q) {
  const EigenDecomposition ed = eigen_decompose(q);
  const double norm = std::max(std::abs(ed.values.front()), std::abs(ed.values.back()));
  if (ed.values.front() < -kDefaultPsdTol * (1.0 + norm)) {
    throw Error(Errc::NotPSD, "Gram factorization of an indefinite matrix");
  }
  const double cut = 1e-9 * std::max(1.0, norm);
  std::vector<Index> keep;
  for (std::size_t j = 0; j < ed.values.size(); ++j) {
    if (ed.values[j] > cut) keep.push_back(static_cast<Index>(j));
  }
  const Index m = q.dim();
  const Index n = static_cast<Index>(keep.size());
  std::vector<VectorC> out;
  out.reserve(static_cast<std::size_t>(m));
  if (n == 0) {
    for (Index i = 0; i < m; ++i) out.push_back(VectorC::Zero(1));
    return out;
  }
  // Rows of Lambda^{1/2} U^* restricted to the kept spectrum; column i is u_i.
  MatrixC factor(n, m);
  for (Index a = 0; a < n; ++a) {
    const double s = std::sqrt(ed.values[static_cast<std::size_t>(keep[a])]);
    factor.row(a) = s * ed.vectors.col(keep[a]).adjoint();
  }
  for (Index i = 0; i < m; ++i) out.emplace_back(factor.col(i));
  return out;
}

HermitianMatrix dilation(const HermitianMatrix& t) {
  const Index n = t.dim();
  const double diag_tol = 1e-12 * std::max(1.0, t.max_abs_entry());
  for (Index j = 0; j < n; ++j) {
    if (std::abs(t(j, j)) > diag_tol) throw Error(Errc::NonzeroDiagonal, "dilation needs a zero-diagonal matrix");
  }
  const EigenDecomposition ed = eigen_decompose(t);
  const double norm = std::max(std::abs(ed.values.front()), std::abs(ed.values.back()));
  if (norm > 1.0 + 1e-9) throw Error(Errc::NormTooLarge, "dilation needs ||T|| <= 1, got " + std::to_string(norm));
  std::vector<double> s_vals;
  s_vals.reserve(ed.values.size());
  for (double l : ed.values) s_vals.push_back(std::sqrt(std::max(0.0, 1.0 - l * l)));
  const MatrixC s = HermitianMatrix::from_spectrum(ed.vectors, s_vals).matrix();
  const MatrixC id = MatrixC::Identity(n, n);
  MatrixC q(2 * n, 2 * n);
  q.topLeftCorner(n, n) = 0.5 * (id + t.matrix());
  q.topRightCorner(n, n) = 0.5 * s;
  q.bottomLeftCorner(n, n) = 0.5 * s;
  q.bottomRightCorner(n, n) = 0.5 * (id - t.matrix());
  return HermitianMatrix(q);
}

HermitianMatrix compress(const HermitianMatrix& m, std::span<const Index> indices) {
  for (Index i : indices) {
    if (i < 0 || i >= m.dim()) throw Error(Errc::BadIndex, "compression index out of range");
  }
  return HermitianMatrix(submatrix(m.matrix(), indices));
}

}  // namespace interlacing
