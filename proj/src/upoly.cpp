#include "interlacing/upoly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include <Eigen/Dense>
#include <unsupported/Eigen/Polynomials>

#include "interlacing/error.hpp"

namespace interlacing {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Two roots closer than this (relative) may belong to one multiple root.
// A k-fold root perturbed by coefficient noise splits into a ring of radius
// roughly noise^(1/k); kMultipleRootNoise bounds that noise.
constexpr double kMultipleRootNoise = 1e-10;

double rel_imag(Complex z) { return std::abs(z.imag()) / (1.0 + std::abs(z)); }

// Replace groups of roots that look like a perturbed multiple real root by
// their (real) centroid. Roots that are already real at `tol` are left alone
// unless they are needed to complete a group.
std::vector<Complex> merge_multiple_roots(std::vector<Complex> zs, double tol) {
  const std::size_t n = zs.size();
  std::vector<bool> consumed(n, false);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return rel_imag(zs[a]) > rel_imag(zs[b]); });

  for (std::size_t idx : order) {
    if (consumed[idx] || rel_imag(zs[idx]) <= tol) continue;
    std::vector<std::size_t> near;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != idx && !consumed[j]) near.push_back(j);
    }
    std::sort(near.begin(), near.end(), [&](std::size_t a, std::size_t b) {
      return std::abs(zs[a] - zs[idx]) < std::abs(zs[b] - zs[idx]);
    });
    std::vector<std::size_t> group{idx};
    for (std::size_t j : near) {
      group.push_back(j);
      Complex c{0.0, 0.0};
      for (std::size_t g : group) c += zs[g];
      c /= static_cast<double>(group.size());
      double spread = 0.0;
      for (std::size_t g : group) spread = std::max(spread, std::abs(zs[g] - c));
      const double allowed =
          std::pow(kMultipleRootNoise, 1.0 / static_cast<double>(group.size())) * (1.0 + std::abs(c));
      if (spread > allowed) continue;
      if (rel_imag(c) <= tol) {
        for (std::size_t g : group) {
          zs[g] = Complex{c.real(), 0.0};
          consumed[g] = true;
        }
        break;
      }
    }
  }
  return zs;
}

// Relative coefficient perturbation under which a real point counts as a root.
constexpr double kBackwardNoise = 1e-12;

// Complex roots whose real part is a root of p up to a coefficient
// perturbation of relative size kBackwardNoise are taken as real. A nearly
// double real root can split far into the plane while p barely moves.
// sum_k |c_k| |x|^k
double abs_eval(const RealUniPoly& p, double x) {
  double mag = 0.0;
  for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) mag = mag * std::abs(x) + std::abs(*it);
  return mag;
}

std::vector<Complex> snap_backward_real(std::vector<Complex> zs, const RealUniPoly& p, double tol) {
  for (Complex& z : zs) {
    if (rel_imag(z) <= tol) continue;
    const double x = z.real();
    if (std::abs(p(x)) <= kBackwardNoise * abs_eval(p, x)) z = Complex{x, 0.0};
  }
  return zs;
}

std::vector<Complex> numerical_roots(const RealUniPoly& p, double tol) {
  return snap_backward_real(merge_multiple_roots(roots(p), tol), p, tol);
}

}  // namespace

RealUniPoly::RealUniPoly(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  for (double c : coeffs_) {
    if (!std::isfinite(c)) throw Error(Errc::PreconditionFailed, "non-finite polynomial coefficient");
  }
  trim();
}

RealUniPoly::RealUniPoly(std::initializer_list<double> coeffs)
    : RealUniPoly(std::vector<double>(coeffs)) {}

RealUniPoly RealUniPoly::constant(double c) { return RealUniPoly({c}); }

RealUniPoly RealUniPoly::linear(double root) { return RealUniPoly({-root, 1.0}); }

RealUniPoly RealUniPoly::from_roots(std::span<const double> roots, double lead) {
  std::vector<double> c{lead};
  c.reserve(roots.size() + 1);
  for (double r : roots) {
    c.push_back(0.0);
    for (std::size_t k = c.size() - 1; k > 0; --k) c[k] = c[k - 1] - r * c[k];
    c[0] = -r * c[0];
  }
  return RealUniPoly(std::move(c));
}

void RealUniPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
}

double RealUniPoly::coeff(int k) const noexcept {
  if (k < 0 || k > degree()) return 0.0;
  return coeffs_[static_cast<std::size_t>(k)];
}

double RealUniPoly::scale() const noexcept {
  double s = 0.0;
  for (double c : coeffs_) s = std::max(s, std::abs(c));
  return s;
}

double RealUniPoly::operator()(double x) const noexcept {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Complex RealUniPoly::operator()(Complex x) const noexcept {
  Complex acc{0.0, 0.0};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

RealUniPoly RealUniPoly::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<double> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = static_cast<double>(k) * coeffs_[k];
  return RealUniPoly(std::move(d));
}

RealUniPoly RealUniPoly::reflect() const {
  std::vector<double> c = coeffs_;
  for (std::size_t k = 1; k < c.size(); k += 2) c[k] = -c[k];
  return RealUniPoly(std::move(c));
}

RealUniPoly& RealUniPoly::operator+=(const RealUniPoly& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), 0.0);
  for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) coeffs_[k] += rhs.coeffs_[k];
  trim();
  return *this;
}

RealUniPoly& RealUniPoly::operator-=(const RealUniPoly& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), 0.0);
  for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) coeffs_[k] -= rhs.coeffs_[k];
  trim();
  return *this;
}

RealUniPoly& RealUniPoly::operator*=(double s) {
  for (double& c : coeffs_) c *= s;
  trim();
  return *this;
}

RealUniPoly operator*(const RealUniPoly& a, const RealUniPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<double> c(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return RealUniPoly(std::move(c));
}

std::vector<Complex> roots(const RealUniPoly& p) {
  if (p.degree() < 1) throw Error(Errc::PreconditionFailed, "roots of a constant polynomial");
  const auto& c = p.coeffs();
  std::size_t zeros = 0;
  while (c[zeros] == 0.0) ++zeros;
  std::vector<Complex> out(zeros, Complex{0.0, 0.0});

  const RealUniPoly q(std::vector<double>(c.begin() + static_cast<std::ptrdiff_t>(zeros), c.end()));
  if (q.degree() == 0) return out;
  if (q.degree() == 1) {
    out.emplace_back(-q.coeff(0) / q.coeff(1), 0.0);
    return out;
  }

  Eigen::VectorXd cv = Eigen::Map<const Eigen::VectorXd>(q.coeffs().data(), q.degree() + 1);
  // The solver is scale sensitive only through the companion matrix, which it
  // balances; normalize anyway so the leading coefficient is one.
  cv /= cv(cv.size() - 1);
  Eigen::PolynomialSolver<double, Eigen::Dynamic> solver;
  solver.compute(cv);
  const auto& rs = solver.roots();
  const RealUniPoly dq = q.derivative();
  for (Eigen::Index k = 0; k < rs.size(); ++k) {
    Complex z = rs(k);
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw Error(Errc::IterationFailure, "companion eigensolver did not converge");
    }
    const Complex fz = q(z);
    const Complex dz = dq(z);
    if (std::abs(dz) > 0.0) {
      const Complex cand = z - fz / dz;
      if (std::abs(q(cand)) < std::abs(fz)) z = cand;
    }
    out.push_back(z);
  }
  return out;
}

std::vector<double> real_roots(const RealUniPoly& p, double tol) {
  const auto merged = numerical_roots(p, tol);
  std::vector<double> out;
  out.reserve(merged.size());
  for (Complex z : merged) {
    if (rel_imag(z) > tol) {
      throw Error(Errc::NotRealRooted, "root with relative imaginary part " + std::to_string(rel_imag(z)));
    }
    out.push_back(z.real());
  }
  std::sort(out.begin(), out.end());
  return out;
}

double max_relative_imag(const RealUniPoly& p) {
  if (p.degree() < 1) return 0.0;
  const auto merged = numerical_roots(p, kDefaultRealRootTol);
  double worst = 0.0;
  for (Complex z : merged) worst = std::max(worst, rel_imag(z));
  return worst;
}

bool is_real_rooted(const RealUniPoly& p, double tol) {
  if (tol < 0.0) throw Error(Errc::PreconditionFailed, "negative tolerance");
  if (p.degree() < 1) return !p.is_zero();
  const auto merged = numerical_roots(p, tol);
  return std::all_of(merged.begin(), merged.end(), [&](Complex z) { return rel_imag(z) <= tol; });
}

double max_real_part(const RealUniPoly& p) {
  double best = -std::numeric_limits<double>::infinity();
  for (Complex z : roots(p)) best = std::max(best, z.real());
  return best;
}

namespace {

// True when every Taylor coefficient of p at x has the sign of the leading
// coefficient, i.e. p has no root strictly above x.
bool above_all_roots(const RealUniPoly& p, double x) {
  const double s = p.leading() > 0 ? 1.0 : -1.0;
  RealUniPoly d = p;
  for (int j = 0; j <= p.degree(); ++j) {
    if (s * d(x) <= 0.0) return false;
    d = d.derivative();
  }
  return true;
}

// Monotone Newton descent onto the largest root of p, started just above `top`.
double descend_to_top_root(const RealUniPoly& p, double top) {
  const double s = p.leading() > 0 ? 1.0 : -1.0;

  // Start strictly above every root, certified through the Taylor expansion.
  double margin = 1e-9 * (1.0 + std::abs(top));
  double x = top + margin;
  for (int attempt = 0; !above_all_roots(p, x); ++attempt) {
    if (attempt > 60) throw Error(Errc::IterationFailure, "could not bracket the largest root");
    margin *= 4.0;
    x = top + margin;
  }

  const RealUniPoly dp = p.derivative();
  double prev = x;
  for (int it = 0; it < 4000; ++it) {
    const double fx = p(x);
    if (s * fx <= 0.0) {
      // Stepped onto or past the root: bisect the sign change in [x, prev].
      double lo = x, hi = prev;
      for (int b = 0; b < 200 && hi - lo > 2 * kEps * (1.0 + std::abs(hi)); ++b) {
        const double mid = 0.5 * (lo + hi);
        if (s * p(mid) > 0.0) hi = mid; else lo = mid;
      }
      return hi;
    }
    const double dfx = dp(x);
    if (s * dfx <= 0.0) break;
    const double step = fx / dfx;
    if (step <= 4 * kEps * (1.0 + std::abs(x))) break;
    const double next = x - step;
    if (!(next < x)) break;
    prev = x;
    x = next;
  }
  return x;
}

}  // namespace

double max_root(const RealUniPoly& p, double tol) {
  const std::vector<double> rr = real_roots(p, tol);
  if (rr.size() == 1) return rr.front();
  const double top = rr.back();
  double best = descend_to_top_root(p, top);

  // A k-fold top root is a simple, well conditioned root of p^(k-1). Take the
  // largest k for which p .. p^(k-2) also vanish there up to backward error.
  const auto near = std::count_if(rr.begin(), rr.end(), [&](double r) { return top - r <= 1e-3 * (1.0 + std::abs(top)); });
  std::vector<RealUniPoly> ders{p};
  for (std::ptrdiff_t j = 1; j < near; ++j) {
    ders.push_back(ders.back().derivative());
    const double x = descend_to_top_root(ders.back(), top);
    const bool multiple = std::all_of(ders.begin(), ders.end() - 1, [&](const RealUniPoly& q) {
      return std::abs(q(x)) <= kBackwardNoise * abs_eval(q, x);
    });
    if (!multiple) break;
    best = x;
  }
  return best;
}

bool interlaces(const RealUniPoly& g, const RealUniPoly& f, double tol) {
  if (g.degree() != f.degree() - 1 || f.degree() < 1) {
    throw Error(Errc::DegreeMismatch, "interlacing needs deg g = deg f - 1");
  }
  const std::vector<double> beta = real_roots(f, kDefaultRealRootTol);
  const std::vector<double> alpha =
      g.degree() >= 1 ? real_roots(g, kDefaultRealRootTol) : std::vector<double>{};
  double mag = 0.0;
  for (double b : beta) mag = std::max(mag, std::abs(b));
  const double slack = tol * (1.0 + mag);
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (beta[i] > alpha[i] + slack) return false;
    if (alpha[i] > beta[i + 1] + slack) return false;
  }
  return true;
}

RealUniPoly convex_combo(std::span<const RealUniPoly> fs, std::span<const double> lambdas) {
  if (fs.size() != lambdas.size() || fs.empty()) throw Error(Errc::BadWeights, "weight count mismatch");
  double total = 0.0;
  for (double l : lambdas) {
    if (!(l >= 0.0)) throw Error(Errc::BadWeights, "negative weight");
    total += l;
  }
  if (std::abs(total - 1.0) > 1e-12) throw Error(Errc::BadWeights, "weights do not sum to one");
  RealUniPoly out;
  for (std::size_t i = 0; i < fs.size(); ++i) out += fs[i] * lambdas[i];
  return out;
}

bool common_interlacing_check(std::span<const RealUniPoly> fs, int samples, double tol,
                              std::uint64_t seed) {
  if (fs.empty()) return true;
  const int n = fs.front().degree();
  for (const auto& f : fs) {
    if (f.degree() != n) throw Error(Errc::DegreeMismatch, "family members differ in degree");
    if (!(f.leading() > 0.0)) throw Error(Errc::NonPositiveLeading, "family member with non-positive leading coefficient");
  }
  if (n < 1) return true;
  const std::size_t k = fs.size();

  auto combo_ok = [&](const std::vector<double>& lam) {
    RealUniPoly c;
    for (std::size_t i = 0; i < k; ++i) c += fs[i] * lam[i];
    return is_real_rooted(c, tol);
  };

  std::vector<double> lam(k, 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    std::fill(lam.begin(), lam.end(), 0.0);
    lam[i] = 1.0;
    if (!combo_ok(lam)) return false;
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      std::fill(lam.begin(), lam.end(), 0.0);
      lam[i] = lam[j] = 0.5;
      if (!combo_ok(lam)) return false;
    }
  }
  if (k == 1) return true;
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> expo(1.0);
  for (int s = 0; s < samples; ++s) {
    double total = 0.0;
    for (double& l : lam) total += (l = expo(rng));
    for (double& l : lam) l /= total;
    if (!combo_ok(lam)) return false;
  }
  return true;
}

}  // namespace interlacing
