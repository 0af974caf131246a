#include "interlacing/solver.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <bit>
#include <set>
#include <unordered_map>

#include "interlacing/error.hpp"
#include "numeric_detail.hpp"

namespace interlacing {

namespace {

constexpr double kIsotropyTol = 1e-8;
constexpr double kGramNoise = 1e-9;

double identity_gap(const HermitianMatrix& s) {
  return (s.matrix() - MatrixC::Identity(s.dim(), s.dim())).cwiseAbs().maxCoeff();
}

HermitianMatrix frame_operator(std::span<const VectorC> vs, Index d) {
  HermitianMatrix s = HermitianMatrix::zero(d);
  for (const auto& v : vs) s += rank1(v);
  return s;
}

Index common_dim(std::span<const VectorC> vs) {
  if (vs.empty()) throw Error(Errc::DimensionMismatch, "no vectors");
  const Index d = vs.front().size();
  for (const auto& v : vs) {
    if (v.size() != d || d == 0) throw Error(Errc::DimensionMismatch, "vectors of different dimension");
  }
  return d;
}

CovarianceList tail_covariances(std::span<const RandomVectorSpec> specs, std::size_t from) {
  std::vector<HermitianMatrix> mats;
  for (std::size_t i = from; i < specs.size(); ++i) mats.push_back(covariance(specs[i]));
  return CovarianceList(std::move(mats));
}

struct Descent {
  std::vector<std::size_t> choice;
  std::vector<double> path_roots;
  RealUniPoly leaf;
};

// Greedy walk: at depth k try every positive-probability atom of vector k and
// keep the child with the smallest largest root (first one on ties).
template <class Eval>
Descent descend(const std::vector<std::vector<double>>& probs, Eval&& eval) {
  Descent out;
  RealUniPoly node = eval(out.choice);
  out.path_roots.push_back(max_root(node));
  for (std::size_t k = 0; k < probs.size(); ++k) {
    std::optional<std::size_t> best;
    double best_root = 0.0;
    RealUniPoly best_poly;
    out.choice.push_back(0);
    for (std::size_t j = 0; j < probs[k].size(); ++j) {
      if (probs[k][j] <= 0.0) continue;
      out.choice.back() = j;
      RealUniPoly child = eval(out.choice);
      const double root = max_root(child);
      if (!best || root < best_root) {
        best = j;
        best_root = root;
        best_poly = std::move(child);
      }
    }
    out.choice.back() = *best;
    node = std::move(best_poly);
    out.path_roots.push_back(best_root);
  }
  out.leaf = std::move(node);
  return out;
}

// Tree polynomials of the lifted partition problem. Every covariance and
// every fixed vector is block diagonal with r blocks of rank-one pieces, so
// the coefficient of x^{rd-s} is (-1)^s times a sum of products of Gram
// determinants over disjoint (S_1..S_r) with sum |S_b| = s; fixed elements
// may only sit in their own block and carry a factor r. All terms are
// nonnegative, so nothing cancels.
class LiftedTree {
 public:
  LiftedTree(std::span<const VectorC> us, int r) : r_(r), d_(common_dim(us)), m_(us.size()) {
    if (m_ > 63) throw Error(Errc::TooManyVectors, "lifted tree supports at most 63 vectors");
    if (r < 1) throw Error(Errc::BadParameters, "r must be at least 1");
    const std::size_t cap = std::min<std::size_t>(m_, static_cast<std::size_t>(d_));
    std::vector<std::size_t> idx;
    std::function<void(std::size_t)> walk = [&](std::size_t next) {
      if (!idx.empty()) {
        const Index k = static_cast<Index>(idx.size());
        MatrixC u(d_, k);
        for (Index a = 0; a < k; ++a) u.col(a) = us[idx[static_cast<std::size_t>(a)]];
        // det Gram = prod |R_aa|^2, better conditioned than factoring the Gram matrix
        const MatrixC rr = u.householderQr().matrixQR();
        double det = 1.0;
        double worst = 1.0;
        for (Index a = 0; a < k; ++a) {
          const double ra = std::abs(rr(a, a));
          det *= ra * ra;
          const double na = u.col(a).norm();
          worst = na > 0.0 ? std::min(worst, ra / na) : 0.0;
        }
        std::uint64_t mask = 0;
        for (std::size_t i : idx) mask |= std::uint64_t{1} << i;
        // dependent sets leave rounding noise that would show up as tiny complex roots
        if (worst > kGramNoise) gram_.push_back({mask, det});
      }
      if (idx.size() == cap) return;
      for (std::size_t i = next; i < m_; ++i) {
        idx.push_back(i);
        walk(i + 1);
        idx.pop_back();
      }
    };
    walk(0);
    if (gram_.size() > kMaxSubsetEnumeration) throw Error(Errc::TooManyVectors, "too many Gram minors");
  }

  // blocks[i] is the fixed block of vector i for i < blocks.size().
  RealUniPoly operator()(const std::vector<std::size_t>& blocks) const {
    const std::size_t deg = static_cast<std::size_t>(r_) * static_cast<std::size_t>(d_);
    std::uint64_t fixed = 0;
    std::vector<std::uint64_t> in_block(static_cast<std::size_t>(r_), 0);
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      fixed |= std::uint64_t{1} << i;
      in_block[blocks[i]] |= std::uint64_t{1} << i;
    }
    std::vector<std::vector<std::pair<std::uint64_t, double>>> w(static_cast<std::size_t>(r_));
    for (int b = 0; b < r_; ++b) {
      const std::uint64_t foreign = fixed & ~in_block[static_cast<std::size_t>(b)];
      for (const auto& [mask, g] : gram_) {
        if (mask & foreign) continue;
        w[static_cast<std::size_t>(b)].emplace_back(mask, g * std::pow(static_cast<double>(r_), std::popcount(mask & fixed)));
      }
    }
    const std::vector<double> by_size = m_ <= kDenseMaxVectors ? dense(w) : sparse(w);
    std::vector<double> coeffs(deg + 1, 0.0);
    for (std::size_t s = 0; s <= deg && s < by_size.size(); ++s) coeffs[deg - s] = (s % 2 == 0) ? by_size[s] : -by_size[s];
    return RealUniPoly(std::move(coeffs));
  }

 private:
  static constexpr std::size_t kDenseMaxVectors = 20;

  using Weights = std::vector<std::vector<std::pair<std::uint64_t, double>>>;

  // Sum of prod_b w_b(S_b) over disjoint S_1..S_r, binned by |S_1 u .. u S_r|.
  std::vector<double> dense(const Weights& w) const {
    const std::size_t full = (std::size_t{1} << m_) - 1;
    std::vector<double> f(full + 1, 0.0);
    f[0] = 1.0;
    for (const auto& [mask, v] : w.front()) f[mask] = v;
    for (std::size_t b = 1; b + 1 < w.size(); ++b) {
      std::vector<double> wb(full + 1, 0.0);
      wb[0] = 1.0;
      for (const auto& [mask, v] : w[b]) wb[mask] = v;
      std::vector<double> next(full + 1, 0.0);
      for (std::size_t u = 0; u <= full; ++u) {
        if (f[u] == 0.0) continue;
        const std::size_t rest = full & ~u;
        for (std::size_t s = rest;; s = (s - 1) & rest) {
          if (wb[s] != 0.0) next[u | s] += f[u] * wb[s];
          if (s == 0) break;
        }
      }
      f = std::move(next);
    }
    std::vector<detail::CompensatedSum> acc(m_ + 1);
    if (w.size() == 1) {
      for (std::size_t u = 0; u <= full; ++u) acc[static_cast<std::size_t>(std::popcount(u))].add(f[u]);
    } else {
      std::vector<double> wl(full + 1, 0.0);
      wl[0] = 1.0;
      for (const auto& [mask, v] : w.back()) wl[mask] = v;
      std::vector<double> local(m_ + 1);
      for (std::size_t u = 0; u <= full; ++u) {
        if (f[u] == 0.0) continue;
        std::fill(local.begin(), local.end(), 0.0);
        const std::size_t rest = full & ~u;
        for (std::size_t s = rest;; s = (s - 1) & rest) {
          if (wl[s] != 0.0) local[static_cast<std::size_t>(std::popcount(s))] += wl[s];
          if (s == 0) break;
        }
        const std::size_t cu = static_cast<std::size_t>(std::popcount(u));
        for (std::size_t k = 0; k + cu <= m_; ++k) {
          if (local[k] != 0.0) acc[k + cu].add(f[u] * local[k]);
        }
      }
    }
    std::vector<double> out;
    for (auto& a : acc) out.push_back(a.value());
    return out;
  }

  std::vector<double> sparse(const Weights& w) const {
    std::unordered_map<std::uint64_t, double> f{{0, 1.0}};
    for (const auto& wb : w) {
      std::unordered_map<std::uint64_t, double> next = f;
      for (const auto& [u, fu] : f) {
        for (const auto& [s, ws] : wb) {
          if (u & s) continue;
          next[u | s] += fu * ws;
        }
      }
      f = std::move(next);
    }
    std::vector<detail::CompensatedSum> acc(m_ + 1);
    for (const auto& [u, fu] : f) acc[static_cast<std::size_t>(std::popcount(u))].add(fu);
    std::vector<double> out;
    for (auto& a : acc) out.push_back(a.value());
    return out;
  }

  int r_;
  Index d_;
  std::size_t m_;
  std::vector<std::pair<std::uint64_t, double>> gram_;
};

// Descent through the lifted tree plus the readout of parts.
PartitionResult partition_impl(std::span<const VectorC> us, int r, bool isotropic) {
  const Index d = common_dim(us);
  PartitionResult res;
  res.r = r;
  for (const auto& u : us) res.delta = std::max(res.delta, u.squaredNorm());

  const LiftedTree tree(us, r);
  const std::vector<std::vector<double>> probs(us.size(), std::vector<double>(static_cast<std::size_t>(r), 1.0 / r));
  const Descent g = descend(probs, tree);
  res.root_bound = g.path_roots.front();
  res.path_roots = g.path_roots;

  res.parts.assign(static_cast<std::size_t>(r), {});
  for (std::size_t i = 0; i < g.choice.size(); ++i) res.parts[g.choice[i]].push_back(i);
  for (const auto& part : res.parts) {
    HermitianMatrix s = HermitianMatrix::zero(d);
    for (std::size_t i : part) s += rank1(us[i]);
    res.part_norms.push_back(operator_norm(s));
  }
  if (isotropic) {
    const double b = 1.0 / std::sqrt(static_cast<double>(r)) + std::sqrt(res.delta);
    res.certified_bound = b * b;
    res.vacuous = *res.certified_bound >= 1.0;
  } else {
    res.warnings.push_back("sum of u_i u_i^* is not the identity; no certificate");
  }
  return res;
}

}  // namespace

RealUniPoly lifted_tree_polynomial(std::span<const VectorC> us, int r, std::span<const std::size_t> blocks) {
  if (blocks.size() > us.size()) throw Error(Errc::LengthMismatch, "more fixed blocks than vectors");
  for (std::size_t b : blocks) {
    if (b >= static_cast<std::size_t>(r)) throw Error(Errc::BadIndex, "block index out of range");
  }
  return LiftedTree(us, r)(std::vector<std::size_t>(blocks.begin(), blocks.end()));
}

GreedyResult greedy_assign(std::span<const RandomVectorSpec> specs) {
  if (specs.empty()) throw Error(Errc::DimensionMismatch, "no random vectors");
  const Index d = specs.front().dim();
  for (const auto& s : specs) {
    if (s.dim() != d) throw Error(Errc::DimensionMismatch, "random vectors of different dimension");
    if (s.support() > kMaxOutcomeEnumeration) throw Error(Errc::SupportTooLarge, "support too large for the search");
  }
  const std::size_t m = specs.size();

  GreedyResult res;
  const CovarianceList all = tail_covariances(specs, 0);
  const double gap = identity_gap(all.sum());
  res.isotropic = gap <= kIsotropyTol;
  for (const auto& s : specs) res.epsilon = std::max(res.epsilon, s.expected_sq_norm());
  if (res.isotropic) {
    const double b = 1.0 + std::sqrt(res.epsilon);
    res.certified_bound = b * b;
  } else {
    res.warnings.push_back("sum of covariances differs from I by " + std::to_string(gap) + "; no certificate");
  }

  std::vector<CovarianceList> tails;
  for (std::size_t k = 0; k <= m; ++k) tails.push_back(tail_covariances(specs, k));
  std::vector<std::vector<double>> probs;
  for (const auto& s : specs) {
    std::vector<double> p;
    for (const auto& a : s.atoms()) p.push_back(a.prob);
    probs.push_back(std::move(p));
  }
  auto eval = [&](const std::vector<std::size_t>& prefix) {
    if (prefix.empty()) return mixed_charpoly(all);
    std::vector<VectorC> fixed;
    for (std::size_t i = 0; i < prefix.size(); ++i) fixed.push_back(specs[i].atom(prefix[i]).value);
    return tree_polynomial(fixed, tails[prefix.size()]);
  };
  const Descent g = descend(probs, eval);

  res.root_bound = g.path_roots.front();
  res.path_roots = g.path_roots;
  res.leaf.polynomial = g.leaf;
  res.leaf.max_root = g.path_roots.back();
  HermitianMatrix s = HermitianMatrix::zero(d);
  for (std::size_t i = 0; i < m; ++i) {
    res.leaf.chosen.emplace_back(i, g.choice[i]);
    s += rank1(specs[i].atom(g.choice[i]).value);
  }
  res.achieved = operator_norm(s);
  return res;
}

std::vector<RandomVectorSpec> lift_for_partition(std::span<const VectorC> us, int r) {
  if (r < 1) throw Error(Errc::BadParameters, "r must be at least 1");
  const Index d = common_dim(us);
  const double scale = std::sqrt(static_cast<double>(r));
  const double p = 1.0 / static_cast<double>(r);
  std::vector<RandomVectorSpec> specs;
  specs.reserve(us.size());
  for (const auto& u : us) {
    std::vector<Atom> atoms;
    for (int k = 0; k < r; ++k) {
      VectorC v = VectorC::Zero(static_cast<Index>(r) * d);
      v.segment(static_cast<Index>(k) * d, d) = scale * u;
      atoms.push_back(Atom{std::move(v), p});
    }
    specs.emplace_back(std::move(atoms));
  }
  return specs;
}

PartitionResult partition_r(std::span<const VectorC> us, int r, bool strict) {
  if (r < 1) throw Error(Errc::BadParameters, "r must be at least 1");
  const Index d = common_dim(us);
  const double gap = identity_gap(frame_operator(us, d));
  const bool isotropic = gap <= kIsotropyTol;
  if (!isotropic && strict) {
    throw Error(Errc::NotDecomposition, "sum of u_i u_i^* differs from I by " + std::to_string(gap));
  }
  return partition_impl(us, r, isotropic);
}

double weaver_bound(double eta) {
  const double b = 1.0 / std::sqrt(2.0) + 1.0 / std::sqrt(eta);
  return eta * b * b;
}

PartitionResult weaver_partition(std::span<const VectorC> ws, double eta) {
  if (!(eta > 0.0) || !std::isfinite(eta)) throw Error(Errc::BadParameters, "eta must be positive");
  const Index d = common_dim(ws);
  for (std::size_t i = 0; i < ws.size(); ++i) {
    if (ws[i].norm() > 1.0 + 1e-9) {
      throw Error(Errc::NormTooLarge, "||w_" + std::to_string(i) + "|| = " + std::to_string(ws[i].norm()) + " > 1");
    }
  }
  const HermitianMatrix s = frame_operator(ws, d);
  const double off = operator_norm(s - HermitianMatrix::identity(d) * eta);
  if (off > 1e-6) throw Error(Errc::NotIsotropic, "||sum w w^* - eta I|| = " + std::to_string(off));

  std::vector<VectorC> us;
  us.reserve(ws.size());
  const double inv = 1.0 / std::sqrt(eta);
  for (const auto& w : ws) us.push_back(w * inv);
  PartitionResult res = partition_impl(us, 2, true);
  for (std::size_t k = 0; k < res.parts.size(); ++k) {
    HermitianMatrix part = HermitianMatrix::zero(d);
    for (std::size_t i : res.parts[k]) part += rank1(ws[i]);
    res.part_norms[k] = operator_norm(part);
  }
  res.certified_bound = weaver_bound(eta);
  res.vacuous = *res.certified_bound >= eta;
  return res;
}

PavingResult pave(const HermitianMatrix& t, double eps, std::optional<int> r_override) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw Error(Errc::BadParameters, "eps must be positive");
  const Index n = t.dim();
  if (n < 1) throw Error(Errc::DimensionMismatch, "empty matrix");
  for (Index j = 0; j < n; ++j) {
    if (std::abs(t(j, j)) > 1e-10) throw Error(Errc::NonzeroDiagonal, "paving needs a zero-diagonal matrix");
  }

  PavingResult res;
  res.epsilon = eps;
  res.r_theorem = std::pow(6.0 / eps, 4.0);
  if (r_override) {
    if (*r_override < 1) throw Error(Errc::BadParameters, "r must be at least 1");
    res.r_used = *r_override;
  } else {
    res.r_used = static_cast<int>(std::ceil(36.0 / (eps * eps) * (1.0 - 1e-14)));
  }
  res.max_parts = res.r_used * res.r_used;
  const double b = 1.0 / std::sqrt(static_cast<double>(res.r_used)) + 1.0 / std::sqrt(2.0);
  res.inner_bound = b * b;
  res.certified_ratio = 2.0 * res.inner_bound - 1.0;
  res.vacuous = static_cast<Index>(res.max_parts) >= n || res.certified_ratio >= 1.0;
  if (res.vacuous) {
    res.warnings.push_back("certificate is vacuous at this size (r^2 >= n or 2(1/sqrt(r)+1/sqrt(2))^2 - 1 >= 1)");
  }

  res.norm = operator_norm(t);
  if (res.norm == 0.0) {
    std::vector<Index> all(static_cast<std::size_t>(n));
    for (Index j = 0; j < n; ++j) all[static_cast<std::size_t>(j)] = j;
    res.parts.push_back(std::move(all));
    res.ratios.push_back(0.0);
    res.measured_certificate = 0.0;
    return res;
  }

  MatrixC tm = t.matrix() / res.norm;
  tm.diagonal().setZero();
  const HermitianMatrix tn(tm);

  // part label of each coordinate from each side, and the achieved dilation norms
  std::vector<std::vector<std::size_t>> labels;
  double worst = 0.0;
  for (double sign : {1.0, -1.0}) {
    const HermitianMatrix q = dilation(tn * sign);
    const auto us = gram_vectors(q);
    const PartitionResult pr = partition_impl(us, res.r_used, identity_gap(frame_operator(us, us.front().size())) <= kIsotropyTol);
    for (double v : pr.part_norms) worst = std::max(worst, v);
    std::vector<std::size_t> label(static_cast<std::size_t>(n));
    for (std::size_t k = 0; k < pr.parts.size(); ++k) {
      for (std::size_t i : pr.parts[k]) {
        if (i < static_cast<std::size_t>(n)) label[i] = k;
      }
    }
    labels.push_back(std::move(label));
  }
  res.measured_certificate = 2.0 * worst - 1.0;

  std::set<std::pair<std::size_t, std::size_t>> keys;
  for (Index j = 0; j < n; ++j) keys.emplace(labels[0][static_cast<std::size_t>(j)], labels[1][static_cast<std::size_t>(j)]);
  for (const auto& key : keys) {
    std::vector<Index> part;
    for (Index j = 0; j < n; ++j) {
      if (labels[0][static_cast<std::size_t>(j)] == key.first && labels[1][static_cast<std::size_t>(j)] == key.second) {
        part.push_back(j);
      }
    }
    res.ratios.push_back(operator_norm(compress(tn, part)));
    res.parts.push_back(std::move(part));
  }
  return res;
}

PavingRBound paving_r_bound(int n, double eps) {
  if (n < 2 || n % 2 != 0) throw Error(Errc::BadParameters, "N must be an even integer >= 2");
  if (!(eps > 0.0) || !std::isfinite(eps)) throw Error(Errc::BadParameters, "eps must be positive");
  const double g = std::sqrt(1.0 + eps) - 1.0;
  PavingRBound out;
  out.r = static_cast<long long>(std::ceil(static_cast<double>(n) / (g * g) * (1.0 - 1e-14)));
  out.r_simplified = static_cast<long long>(std::ceil(6.0 * n / (eps * eps) * (1.0 - 1e-14)));
  return out;
}

TreeReport verify_interlacing_tree(std::span<const RandomVectorSpec> specs, int depth_limit, int samples, double tol,
                                   std::uint64_t seed) {
  if (specs.empty()) throw Error(Errc::DimensionMismatch, "no random vectors");
  const std::size_t m = specs.size();
  const std::size_t depth = depth_limit < 0 ? m : std::min(m, static_cast<std::size_t>(depth_limit));
  double count = 0.0;
  double level = 1.0;
  for (std::size_t k = 0; k <= depth && k <= m; ++k) {
    count += level;
    if (k < m) level *= static_cast<double>(specs[k].support());
  }
  if (count > static_cast<double>(kMaxTreeNodes)) throw Error(Errc::BudgetExceeded, "interlacing tree too large");

  TreeReport rep;
  std::vector<VectorC> fixed;
  std::vector<std::size_t> path;
  std::function<void(std::size_t, const RealUniPoly&)> visit = [&](std::size_t k, const RealUniPoly& parent) {
    if (k >= depth || k >= m) return;
    const CovarianceList rest = tail_covariances(specs, k + 1);
    std::vector<RealUniPoly> kids;
    std::vector<RealUniPoly> weighted;
    std::vector<std::size_t> atoms;
    RealUniPoly sum;
    for (std::size_t j = 0; j < specs[k].support(); ++j) {
      const Atom& a = specs[k].atom(j);
      if (a.prob <= 0.0) continue;
      fixed.push_back(a.value);
      kids.push_back(tree_polynomial(fixed, rest));
      fixed.pop_back();
      weighted.push_back(kids.back() * a.prob);
      sum += weighted.back();
      atoms.push_back(j);
    }
    TreeNodeCheck chk;
    chk.path = path;
    const RealUniPoly diff = sum - parent;
    double dev = 0.0;
    for (double c : diff.coeffs()) dev = std::max(dev, std::abs(c));
    chk.sum_deviation = dev / std::max(1.0, parent.scale());
    chk.sum_ok = chk.sum_deviation <= 1e-9;
    chk.interlacing_ok = common_interlacing_check(weighted, samples, tol, seed + rep.nodes.size());
    rep.max_sum_deviation = std::max(rep.max_sum_deviation, chk.sum_deviation);
    if (!chk.sum_ok || !chk.interlacing_ok) ++rep.failures;
    rep.nodes.push_back(std::move(chk));

    for (std::size_t c = 0; c < kids.size(); ++c) {
      fixed.push_back(specs[k].atom(atoms[c]).value);
      path.push_back(atoms[c]);
      visit(k + 1, kids[c]);
      path.pop_back();
      fixed.pop_back();
    }
  };
  visit(0, mixed_charpoly(tail_covariances(specs, 0)));
  return rep;
}

ExhaustiveResult exhaustive_min_leaf(std::span<const RandomVectorSpec> specs) {
  if (specs.empty()) throw Error(Errc::DimensionMismatch, "no random vectors");
  const Index d = specs.front().dim();
  double leaves = 1.0;
  for (const auto& s : specs) {
    if (s.dim() != d) throw Error(Errc::DimensionMismatch, "random vectors of different dimension");
    leaves *= static_cast<double>(s.support());
  }
  if (leaves > static_cast<double>(kMaxOutcomeEnumeration)) throw Error(Errc::SupportTooLarge, "more than 1e6 leaves");

  ExhaustiveResult res;
  res.min_max_root = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> path;
  std::function<void(std::size_t, const HermitianMatrix&)> visit = [&](std::size_t i, const HermitianMatrix& s) {
    if (i == specs.size()) {
      ++res.leaves;
      const double v = operator_norm(s);
      if (v < res.min_max_root) {
        res.min_max_root = v;
        res.best = path;
      }
      return;
    }
    for (std::size_t j = 0; j < specs[i].support(); ++j) {
      const Atom& a = specs[i].atom(j);
      if (a.prob <= 0.0) continue;
      path.push_back(j);
      visit(i + 1, s + rank1(a.value));
      path.pop_back();
    }
  };
  visit(0, HermitianMatrix::zero(d));
  return res;
}

}  // namespace interlacing
