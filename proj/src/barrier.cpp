#include "interlacing/barrier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "interlacing/error.hpp"

namespace interlacing {

namespace {

constexpr double kPdFloor = 1e-10;
constexpr double kSlackTol = 1e-8;

std::vector<double> unit(std::size_t n, std::size_t j) {
  std::vector<double> e(n, 0.0);
  e[j] = 1.0;
  return e;
}

std::vector<double> all_barriers(const MultiPoly& p, std::span<const double> z) {
  std::vector<double> out(static_cast<std::size_t>(p.nvars()));
  for (int i = 0; i < p.nvars(); ++i) out[static_cast<std::size_t>(i)] = barrier_general(p, z, i);
  return out;
}

// Odd part of r divided by s, or even part (without constant) divided by s^2.
RealUniPoly drop_low(const RealUniPoly& r, int parity) {
  std::vector<double> c;
  const auto& rc = r.coeffs();
  const std::size_t shift = parity == 1 ? 1 : 2;
  for (std::size_t k = shift; k < rc.size(); ++k) {
    if (k % 2 == static_cast<std::size_t>(parity)) {
      if (c.size() < k - shift + 1) c.resize(k - shift + 1, 0.0);
      c[k - shift] = rc[k];
    }
  }
  return RealUniPoly(std::move(c));
}

void check_hypotheses(const CovarianceList& as, double epsilon) {
  if (as.empty()) throw Error(Errc::HypothesisViolated, "no covariances");
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw Error(Errc::HypothesisViolated, "epsilon must be positive");
  const HermitianMatrix s = as.sum();
  const double off = (s.matrix() - MatrixC::Identity(s.dim(), s.dim())).cwiseAbs().maxCoeff();
  if (off > 1e-8) throw Error(Errc::HypothesisViolated, "sum of covariances differs from I by " + std::to_string(off));
  for (std::size_t i = 0; i < as.size(); ++i) {
    if (as[i].trace() > epsilon + 1e-10) {
      throw Error(Errc::HypothesisViolated, "trace of A_" + std::to_string(i) + " exceeds epsilon");
    }
  }
}

}  // namespace

bool BarrierTrace::all_steps_ok() const {
  return std::all_of(steps.begin(), steps.end(),
                     [](const BarrierStep& s) { return s.phi_ok && s.shift_slack >= -kSlackTol; });
}

double barrier_det_form(const CovarianceList& as, std::span<const double> y, std::size_t i) {
  if (y.size() != as.size()) throw Error(Errc::LengthMismatch, "one coordinate per covariance");
  if (i >= as.size()) throw Error(Errc::BadIndex, "barrier index out of range");
  HermitianMatrix s = HermitianMatrix::zero(as.dim());
  for (std::size_t j = 0; j < as.size(); ++j) s += as[j] * y[j];
  const auto ev = eigenvalues(s);
  if (ev.empty() || !(ev.front() > kPdFloor)) throw Error(Errc::NotAboveRoots, "sum y_i A_i is not positive definite");
  Eigen::LDLT<MatrixC> ldlt(s.matrix());
  const MatrixC x = ldlt.solve(as[i].matrix());
  return x.trace().real();
}

double barrier_general(const MultiPoly& p, std::span<const double> z, int i) {
  if (static_cast<int>(z.size()) != p.nvars()) throw Error(Errc::LengthMismatch, "point length");
  if (i < 0 || i >= p.nvars()) throw Error(Errc::BadIndex, "barrier index out of range");
  const double v = p.eval(z);
  if (!(std::abs(v) > 1e-12 * p.scale())) throw Error(Errc::ZeroDenominator, "p vanishes at the point");
  return p.partial(i).eval(z) / v;
}

ShiftReport barrier_shift_check(const MultiPoly& p, std::span<const double> z, int j, double delta, int probe_rays,
                                std::uint64_t seed) {
  if (static_cast<int>(z.size()) != p.nvars()) throw Error(Errc::LengthMismatch, "point length");
  if (j < 0 || j >= p.nvars()) throw Error(Errc::BadIndex, "shift index out of range");
  if (!(delta > 0.0)) throw Error(Errc::PreconditionFailed, "delta must be positive");
  if (!above_roots_probe(p, z, probe_rays, seed)) throw Error(Errc::PreconditionFailed, "z is not above the roots of p");

  ShiftReport rep;
  rep.before = all_barriers(p, z);
  if (rep.before[static_cast<std::size_t>(j)] > 1.0 - 1.0 / delta + 1e-10) {
    throw Error(Errc::PreconditionFailed, "Phi^j exceeds 1 - 1/delta");
  }
  const MultiPoly q = p.one_minus_partial(j);
  std::vector<double> shifted(z.begin(), z.end());
  shifted[static_cast<std::size_t>(j)] += delta;
  rep.after = all_barriers(q, shifted);
  rep.min_slack = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < rep.before.size(); ++i) {
    rep.slacks.push_back(rep.before[i] - rep.after[i]);
    rep.min_slack = std::min(rep.min_slack, rep.slacks.back());
  }
  rep.pass = rep.min_slack >= -kSlackTol;
  return rep;
}

MonotoneConvexReport monotone_convex_check(const MultiPoly& p, std::span<const double> z, int i, int j, double h,
                                           int probe_rays, std::uint64_t seed) {
  if (static_cast<int>(z.size()) != p.nvars()) throw Error(Errc::LengthMismatch, "point length");
  if (i < 0 || i >= p.nvars() || j < 0 || j >= p.nvars()) throw Error(Errc::BadIndex, "index out of range");
  if (!(h > 0.0)) throw Error(Errc::PreconditionFailed, "step must be positive");
  if (!above_roots_probe(p, z, probe_rays, seed)) throw Error(Errc::PreconditionFailed, "z is not above the roots of p");

  const auto e = unit(z.size(), static_cast<std::size_t>(j));
  const RealUniPoly n = p.partial(i).along_line(z, e);
  const RealUniPoly d = p.along_line(z, e);
  const RealUniPoly nm = n.reflect();
  const RealUniPoly dm = d.reflect();
  const double d0 = d(0.0);
  const double n0 = n(0.0);
  const double dh = d(h);
  const double dmh = d(-h);

  // Phi(h) - Phi(-h) = [N(h)D(-h) - N(-h)D(h)] / (D(h)D(-h)), numerator odd in h.
  const RealUniPoly r1 = drop_low(n * dm - nm * d, 1);
  // Phi(h) - 2Phi(0) + Phi(-h), numerator even in h and zero at h = 0.
  const RealUniPoly r2 = drop_low(n * dm * d0 - d * dm * (2.0 * n0) + nm * d * d0, 0);

  MonotoneConvexReport rep;
  rep.first = r1(h) / (2.0 * dh * dmh);
  rep.second = r2(h) / (dh * d0 * dmh);
  rep.pass = rep.first <= 1e-6 && rep.second >= -1e-6;
  return rep;
}

std::optional<bool> above_roots_chain_check(const MultiPoly& p, std::span<const double> z, int i, int probe_rays,
                                            std::uint64_t seed) {
  if (!above_roots_probe(p, z, probe_rays, seed)) return std::nullopt;
  if (!(barrier_general(p, z, i) < 1.0 - 1e-8)) return std::nullopt;
  return above_roots_probe(p.one_minus_partial(i), z, probe_rays, seed);
}

BarrierTrace run_barrier_trace(const CovarianceList& as, double epsilon, const BarrierOptions& opts) {
  check_hypotheses(as, epsilon);
  BarrierTrace tr;
  tr.epsilon = epsilon;
  const double se = std::sqrt(epsilon);
  tr.t = se + epsilon;
  tr.delta = 1.0 + se;
  tr.phi = epsilon / (epsilon + se);
  tr.bound = (1.0 + se) * (1.0 + se);

  const std::size_t m = as.size();
  tr.symbolic = opts.symbolic && m <= kSymbolicMaxVectors && as.dim() <= kSymbolicMaxDim;
  if (!tr.symbolic) {
    tr.final_root = max_root(mixed_charpoly(as));
    return tr;
  }

  MultiPoly p = det_poly(as.mats(), false);
  std::vector<double> x(m, tr.t);
  for (std::size_t k = 0; k <= m; ++k) {
    BarrierStep step;
    step.k = static_cast<int>(k);
    if (k > 0) {
      const int j = static_cast<int>(k - 1);
      const ShiftReport shift = barrier_shift_check(p, x, j, tr.delta, opts.probe_rays, opts.seed + k);
      step.shift_slack = shift.min_slack;
      p = p.one_minus_partial(j);
      step.chain_ok = above_roots_probe(p, x, opts.probe_rays, opts.seed + k);
      x[k - 1] += tr.delta;
    } else {
      step.chain_ok = true;
    }
    step.point = x;
    step.barrier_values = all_barriers(p, x);
    step.above_roots = k == 0 ? above_roots_det_form(as.mats(), x) : above_roots_probe(p, x, opts.probe_rays, opts.seed + k);
    step.phi_ok = std::all_of(step.barrier_values.begin(), step.barrier_values.end(),
                              [&](double v) { return v <= tr.phi + kSlackTol; });
    tr.steps.push_back(std::move(step));
  }
  tr.final_root = max_root(p.diagonal());
  return tr;
}

}  // namespace interlacing
