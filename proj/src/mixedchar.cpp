#include "interlacing/mixedchar.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "interlacing/error.hpp"
#include "numeric_detail.hpp"

namespace interlacing {

namespace {

// e_0..e_kmax of the given values.
std::vector<double> elementary_symmetric(const std::vector<double>& values, std::size_t kmax) {
  std::vector<double> e(kmax + 1, 0.0);
  e[0] = 1.0;
  std::size_t seen = 0;
  for (double l : values) {
    ++seen;
    for (std::size_t k = std::min(seen, kmax); k >= 1; --k) e[k] += l * e[k - 1];
  }
  return e;
}

}  // namespace

RandomVectorSpec::RandomVectorSpec(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw Error(Errc::BadWeights, "random vector needs at least one atom");
  const Index d = atoms_.front().value.size();
  if (d < 1) throw Error(Errc::DimensionMismatch, "atom of dimension zero");
  double total = 0.0;
  for (const auto& a : atoms_) {
    if (a.value.size() != d) throw Error(Errc::DimensionMismatch, "atoms of different dimension");
    if (!(a.prob >= 0.0) || !std::isfinite(a.prob)) throw Error(Errc::BadWeights, "negative or non-finite probability");
    if (!a.value.allFinite()) throw Error(Errc::PreconditionFailed, "non-finite atom entry");
    total += a.prob;
  }
  if (std::abs(total - 1.0) > 1e-12) throw Error(Errc::BadWeights, "probabilities sum to " + std::to_string(total));
}

RandomVectorSpec RandomVectorSpec::deterministic(const VectorC& v) { return RandomVectorSpec({Atom{v, 1.0}}); }

RandomVectorSpec RandomVectorSpec::uniform(std::vector<VectorC> values) {
  std::vector<Atom> atoms;
  atoms.reserve(values.size());
  const double p = 1.0 / static_cast<double>(values.size());
  for (auto& v : values) atoms.push_back(Atom{std::move(v), p});
  return RandomVectorSpec(std::move(atoms));
}

double RandomVectorSpec::expected_sq_norm() const {
  double s = 0.0;
  for (const auto& a : atoms_) s += a.prob * a.value.squaredNorm();
  return s;
}

CovarianceList::CovarianceList(std::vector<HermitianMatrix> mats) {
  mats_.reserve(mats.size());
  for (auto& m : mats) {
    if (!mats_.empty() && m.dim() != mats_.front().dim()) {
      throw Error(Errc::DimensionMismatch, "covariances of different dimension");
    }
    mats_.push_back(project_psd(m));
  }
}

HermitianMatrix CovarianceList::sum() const {
  if (mats_.empty()) throw Error(Errc::DimensionMismatch, "sum of an empty covariance list");
  HermitianMatrix s = HermitianMatrix::zero(dim());
  for (const auto& m : mats_) s += m;
  return s;
}

HermitianMatrix covariance(const RandomVectorSpec& spec) {
  HermitianMatrix acc = HermitianMatrix::zero(spec.dim());
  for (const auto& a : spec.atoms()) {
    if (a.prob > 0.0) acc += rank1(a.value) * a.prob;
  }
  return acc;
}

CovarianceList covariances(std::span<const RandomVectorSpec> specs) {
  std::vector<HermitianMatrix> mats;
  mats.reserve(specs.size());
  for (const auto& s : specs) mats.push_back(covariance(s));
  return CovarianceList(std::move(mats));
}

double mixed_discriminant(std::span<const HermitianMatrix> bs) {
  if (bs.empty()) throw Error(Errc::DimensionMismatch, "mixed discriminant of no matrices");
  const Index d = bs.front().dim();
  for (const auto& b : bs) {
    if (b.dim() != d) throw Error(Errc::DimensionMismatch, "matrices differ in dimension");
  }
  if (static_cast<Index>(bs.size()) > d) throw Error(Errc::DimensionMismatch, "more matrices than the dimension");
  if (d > 24) throw Error(Errc::TooManyVectors, "inclusion-exclusion over 2^d subsets with d > 24");

  std::vector<HermitianMatrix> full(bs.begin(), bs.end());
  const std::size_t pad = static_cast<std::size_t>(d) - bs.size();
  for (std::size_t i = 0; i < pad; ++i) full.push_back(HermitianMatrix::identity(d));

  const std::size_t n = full.size();
  detail::CompensatedSum total;
  std::function<void(std::size_t, std::size_t, const HermitianMatrix&)> visit =
      [&](std::size_t next, std::size_t size, const HermitianMatrix& s) {
        const double sign = ((n - size) % 2 == 0) ? 1.0 : -1.0;
        total.add(sign * det(s));
        for (std::size_t i = next; i < n; ++i) visit(i + 1, size + 1, s + full[i]);
      };
  visit(0, 0, HermitianMatrix::zero(d));

  double fact = 1.0;
  for (std::size_t i = 2; i <= pad; ++i) fact *= static_cast<double>(i);
  return total.value() / fact;
}

RealUniPoly mixed_charpoly(const CovarianceList& as) {
  if (as.empty()) throw Error(Errc::DimensionMismatch, "mixed characteristic polynomial of an empty list");
  const std::size_t m = as.size();
  const std::size_t d = static_cast<std::size_t>(as.dim());
  const std::size_t rank = static_cast<std::size_t>(numerical_rank(as.sum()));
  const std::size_t kcap = std::min({m, d, rank});

  std::size_t visits = 0;
  for (std::size_t j = 0; j <= kcap; ++j) {
    visits += static_cast<std::size_t>(detail::binomial(m, j));
    if (visits > kMaxSubsetEnumeration) {
      throw Error(Errc::TooManyVectors, "mixed characteristic polynomial needs more than 2^20 subsets");
    }
  }

  // acc[j][k] = sum over |T| = j of e_k(spec(A_T)), for j <= k <= kcap.
  std::vector<std::vector<detail::CompensatedSum>> acc(kcap + 1, std::vector<detail::CompensatedSum>(kcap + 1));
  std::function<void(std::size_t, std::size_t, const HermitianMatrix&)> visit =
      [&](std::size_t next, std::size_t size, const HermitianMatrix& s) {
        if (size == 0) {
          acc[0][0].add(1.0);
        } else {
          const auto e = elementary_symmetric(eigenvalues(s), kcap);
          for (std::size_t k = size; k <= kcap; ++k) acc[size][k].add(e[k]);
        }
        if (size == kcap) return;
        for (std::size_t i = next; i < m; ++i) visit(i + 1, size + 1, s + as[i]);
      };
  visit(0, 0, HermitianMatrix::zero(static_cast<Index>(d)));

  std::vector<double> coeffs(d + 1, 0.0);
  for (std::size_t k = 0; k <= kcap; ++k) {
    long double c = 0.0L;
    for (std::size_t j = 0; j <= k; ++j) {
      const long double sign = ((k - j) % 2 == 0) ? 1.0L : -1.0L;
      c += sign * static_cast<long double>(detail::binomial(m - j, k - j)) *
           static_cast<long double>(acc[j][k].value());
    }
    coeffs[d - k] = static_cast<double>((k % 2 == 0) ? c : -c);
  }
  return RealUniPoly(std::move(coeffs));
}

RealUniPoly brute_force_expected_charpoly(std::span<const RandomVectorSpec> specs) {
  if (specs.empty()) throw Error(Errc::DimensionMismatch, "expectation over no random vectors");
  const Index d = specs.front().dim();
  double outcomes = 1.0;
  for (const auto& s : specs) {
    if (s.dim() != d) throw Error(Errc::DimensionMismatch, "random vectors of different dimension");
    outcomes *= static_cast<double>(s.support());
  }
  if (outcomes > static_cast<double>(kMaxOutcomeEnumeration)) {
    throw Error(Errc::SupportTooLarge, "more than 1e6 outcome tuples");
  }

  std::vector<detail::CompensatedSum> acc(static_cast<std::size_t>(d) + 1);
  std::function<void(std::size_t, double, const HermitianMatrix&)> visit =
      [&](std::size_t i, double prob, const HermitianMatrix& s) {
        if (i == specs.size()) {
          const RealUniPoly chi = char_poly(s);
          for (int k = 0; k <= chi.degree(); ++k) acc[static_cast<std::size_t>(k)].add(prob * chi.coeff(k));
          return;
        }
        for (const auto& a : specs[i].atoms()) {
          if (a.prob == 0.0) continue;
          visit(i + 1, prob * a.prob, s + rank1(a.value));
        }
      };
  visit(0, 1.0, HermitianMatrix::zero(d));

  std::vector<double> coeffs;
  coeffs.reserve(acc.size());
  for (const auto& a : acc) coeffs.push_back(a.value());
  return RealUniPoly(std::move(coeffs));
}

RealUniPoly tree_polynomial(std::span<const VectorC> fixed, const CovarianceList& remaining) {
  if (fixed.empty() && remaining.empty()) throw Error(Errc::DimensionMismatch, "empty tree node");
  const Index d = fixed.empty() ? remaining.dim() : fixed.front().size();
  for (const auto& w : fixed) {
    if (w.size() != d) throw Error(Errc::DimensionMismatch, "fixed vectors of different dimension");
  }
  if (!remaining.empty() && remaining.dim() != d) {
    throw Error(Errc::DimensionMismatch, "fixed vectors and covariances differ in dimension");
  }
  if (remaining.empty()) {
    HermitianMatrix s = HermitianMatrix::zero(d);
    for (const auto& w : fixed) s += rank1(w);
    return char_poly(s);
  }
  std::vector<HermitianMatrix> mats;
  mats.reserve(fixed.size() + remaining.size());
  for (const auto& w : fixed) mats.push_back(rank1(w));
  for (const auto& a : remaining.mats()) mats.push_back(a);
  return mixed_charpoly(CovarianceList(std::move(mats)));
}

double jameslee_identity_check(const HermitianMatrix& a, const RandomVectorSpec& spec) {
  if (a.dim() != spec.dim()) throw Error(Errc::DimensionMismatch, "matrix and random vector dimensions differ");
  detail::CompensatedSum lhs;
  for (const auto& atom : spec.atoms()) {
    if (atom.prob > 0.0) lhs.add(atom.prob * det(a - rank1(atom.value)));
  }

  const HermitianMatrix c = covariance(spec);
  const std::size_t n = static_cast<std::size_t>(a.dim()) + 1;
  std::vector<double> g(n);
  for (std::size_t k = 0; k < n; ++k) g[k] = det(a + c * static_cast<double>(k));
  detail::nodes_to_monomial(g);
  const double rhs = g[0] - g[1];
  return std::abs(lhs.value() - rhs);
}

}  // namespace interlacing
