// One line per acceptance criterion; exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "interlacing/barrier.hpp"
#include "interlacing/error.hpp"
#include "interlacing/random.hpp"
#include "interlacing/solver.hpp"
#include "interlacing/verify.hpp"

using namespace interlacing;

namespace {

struct Outcome {
  bool pass = true;
  std::string summary;
};

double rel_gap(const RealUniPoly& a, const RealUniPoly& b) {
  const RealUniPoly diff = a - b;
  double dev = 0.0;
  for (double c : diff.coeffs()) dev = std::max(dev, std::abs(c));
  return dev / std::max(1.0, b.scale());
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

Outcome oracle_equivalence() {
  Rng rng(101);
  double worst = 0.0;
  for (int t = 0; t < 200; ++t) {
    const std::size_t m = 1 + static_cast<std::size_t>(t % 6);
    const Index d = 1 + (t / 6) % 4;
    const auto specs = random_specs(m, d, 3, rng);
    worst = std::max(worst, rel_gap(mixed_charpoly(covariances(specs)), brute_force_expected_charpoly(specs)));
  }
  return {worst <= 1e-9, fmt("200 instances, worst relative coefficient gap %.3g (tol 1e-9)", worst)};
}

Outcome real_rootedness() {
  Rng rng(202);
  double worst = 0.0;
  for (int t = 0; t < 200; ++t) {
    const Index d = 1 + t % 5;
    const int m = 1 + (t / 5) % 8;
    std::vector<HermitianMatrix> as;
    std::uniform_int_distribution<Index> rank(1, d);
    for (int i = 0; i < m; ++i) as.push_back(random_psd(d, rank(rng), rng));
    worst = std::max(worst, max_relative_imag(mixed_charpoly(CovarianceList(as))));
  }
  return {worst <= 1e-6, fmt("200 covariance lists, worst relative imaginary part %.3g (tol 1e-6)", worst)};
}

Outcome interlacing_family() {
  Rng rng(303);
  std::size_t nodes = 0, failures = 0;
  double worst = 0.0;
  for (int t = 0; t < 50; ++t) {
    const auto specs = random_specs(3 + static_cast<std::size_t>(t % 2), 1 + (t / 2) % 3, 3, rng);
    const TreeReport rep = verify_interlacing_tree(specs, -1, 64, 1e-6, static_cast<std::uint64_t>(t));
    nodes += rep.nodes.size();
    failures += rep.failures;
    worst = std::max(worst, rep.max_sum_deviation);
  }
  return {failures == 0, std::to_string(nodes) + " internal nodes, " + std::to_string(failures) + " failures," +
                             fmt(" worst children-sum gap %.3g (tol 1e-9)", worst)};
}

// Isotropic covariances with trace A_i <= eps: an equal-norm tight frame of
// m = eta d vectors (each of squared norm 1/eta), grouped into random runs of
// at most floor(eps eta) consecutive vectors.
std::vector<HermitianMatrix> bounded_trace_covariances(Index d, double eps, Rng& rng) {
  const double eta = 4.0;
  const std::size_t m = static_cast<std::size_t>(eta) * static_cast<std::size_t>(d);
  const auto ws = random_weaver_system(d, m, eta, rng);
  const std::size_t gmax = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(eps * eta + 1e-9)));
  std::uniform_int_distribution<std::size_t> g(1, gmax);
  std::vector<HermitianMatrix> as;
  for (std::size_t i = 0; i < m;) {
    const std::size_t len = std::min(g(rng), m - i);
    HermitianMatrix a = HermitianMatrix::zero(d);
    for (std::size_t j = i; j < i + len; ++j) a += rank1(ws[j] / std::sqrt(eta));
    as.push_back(a);
    i += len;
  }
  return as;
}

Outcome root_bound() {
  Rng rng(404);
  double worst = -1e300;
  int count = 0;
  bool ok = true;
  for (double eps : {0.25, 0.5, 1.0, 2.0}) {
    for (int t = 0; t < 50; ++t) {
      const Index d = 1 + t % 4;
      const auto as = bounded_trace_covariances(d, eps, rng);
      double tr = 0.0;
      for (const auto& a : as) tr = std::max(tr, a.trace());
      if (tr > eps + 1e-12) ok = false;
      const double bound = std::pow(1.0 + std::sqrt(eps), 2);
      const double root = max_root(mixed_charpoly(CovarianceList(as)));
      worst = std::max(worst, root - bound);
      ++count;
    }
  }
  ok = ok && worst <= 1e-8;
  return {ok, std::to_string(count) + " instances over eps in {1/4,1/2,1,2}, max(root - (1+sqrt eps)^2) = " +
                  fmt("%.4g", worst)};
}

Outcome barrier_trace() {
  Rng rng(505);
  double phi_slack = 1e300, shift_slack = 1e300, mono = 1e300, conv = 1e300;
  bool ok = true;
  int symbolic = 0;
  for (int t = 0; t < 20; ++t) {
    const std::size_t m = 2 + static_cast<std::size_t>(t % 3);
    const Index d = 2 + (t / 3) % 2;
    const auto mats = random_isotropic_covariances(m, d, d, rng);
    const CovarianceList as(mats);
    double eps = 0.0;
    for (const auto& a : mats) eps = std::max(eps, a.trace());
    const BarrierTrace tr = run_barrier_trace(as, eps, {.seed = static_cast<std::uint64_t>(t)});
    if (tr.symbolic) ++symbolic;
    ok = ok && tr.symbolic && tr.endpoint_ok();
    for (const auto& s : tr.steps) {
      ok = ok && s.above_roots && s.chain_ok;
      for (double v : s.barrier_values) phi_slack = std::min(phi_slack, tr.phi - v);
      if (s.k > 0) shift_slack = std::min(shift_slack, s.shift_slack);
    }
    // finite-difference signs of Phi^i along e_j at every x^k for P_k
    MultiPoly p = det_poly(mats, false);
    for (std::size_t k = 0; k <= m; ++k) {
      if (k > 0) p = p.one_minus_partial(static_cast<int>(k - 1));
      const auto& x = tr.steps[k].point;
      for (int i = 0; i < static_cast<int>(m); ++i) {
        for (int j = 0; j < static_cast<int>(m); ++j) {
          try {
            const auto rep = monotone_convex_check(p, x, i, j, 1e-5, 16, static_cast<std::uint64_t>(t));
            mono = std::min(mono, rep.monotone_slack());
            conv = std::min(conv, rep.convex_slack());
          } catch (const Error&) {
            ok = false;
          }
        }
      }
    }
  }
  mono += 0.0;
  conv += 0.0;
  ok = ok && phi_slack >= -1e-8 && shift_slack >= -1e-8 && mono >= -1e-6 && conv >= -1e-6;
  return {ok, std::to_string(symbolic) + "/20 symbolic; min phi - Phi " + fmt("%.3g", phi_slack) + ", shift slack " +
                  fmt("%.3g", shift_slack) + ", monotone " + fmt("%.3g", mono) + ", convex " + fmt("%.3g", conv)};
}

Outcome partition_constant() {
  Rng rng(606);
  double worst = -1e300, tree_worst = -1e300;
  int exhaustive = 0;
  bool ok = true;
  for (int t = 0; t < 50; ++t) {
    const Index d = 2 + t % 3;
    const std::size_t m = static_cast<std::size_t>(d) + 2 + static_cast<std::size_t>((t / 3) % (9 - d));
    const int r = 2 + (t / 2) % 2;
    const auto us = random_parseval(std::min<std::size_t>(m, 10), d, rng);
    const PartitionResult pr = partition_r(us, r);
    if (!pr.certified_bound) {
      ok = false;
      continue;
    }
    for (double n : pr.part_norms) worst = std::max(worst, n - *pr.certified_bound);
    if (us.size() <= 8 && r == 2) {
      const ExhaustiveResult ex = exhaustive_min_leaf(lift_for_partition(us, 2));
      tree_worst = std::max(tree_worst, pr.path_roots.back() - pr.root_bound);
      tree_worst = std::max(tree_worst, ex.min_max_root - pr.root_bound);
      ok = ok && ex.min_max_root <= pr.path_roots.back() + 1e-9;
      ++exhaustive;
    }
  }
  ok = ok && worst <= 1e-8 && tree_worst <= 1e-8 && exhaustive > 0;
  return {ok, "50 decompositions, max(part norm - bound) " + fmt("%.4g", worst) + "; " + std::to_string(exhaustive) +
                  " exhaustive checks, max(leaf root - root of q_0) " + fmt("%.4g", tree_worst)};
}

Outcome weaver() {
  Rng rng(707);
  double worst = -1e300, qf = -1e300;
  bool ok = std::abs(weaver_bound(18.0) - 16.0) <= 1e-12;
  for (int t = 0; t < 20; ++t) {
    const Index d = t < 10 ? 1 : 2;
    const std::size_t m = d == 1 ? 18 + 2 * static_cast<std::size_t>(t) : 36;
    const auto ws = random_weaver_system(d, m, 18.0, rng);
    const PartitionResult pr = weaver_partition(ws, 18.0);
    ok = ok && pr.parts.size() == 2;
    for (double n : pr.part_norms) worst = std::max(worst, n - 16.0);
    for (const auto& part : pr.parts) {
      for (int s = 0; s < 100; ++s) {
        VectorC x = random_gaussian_vector(d, rng);
        x.normalize();
        double v = 0.0;
        for (std::size_t i : part) v += std::norm(ws[i].dot(x));
        qf = std::max(qf, v - 16.0);
      }
    }
  }
  ok = ok && worst <= 1e-8 && qf <= 1e-6;
  return {ok, "20 instances (d = 1, 2), max(part norm - 16) " + fmt("%.4g", worst) + ", max(quadratic form - 16) " +
                  fmt("%.4g", qf)};
}

Outcome paving() {
  Rng rng(808);
  double proj = 0.0, diag = 0.0;
  for (int t = 0; t < 50; ++t) {
    const HermitianMatrix z = random_zero_diagonal(2 + t % 7, rng);
    const HermitianMatrix q = dilation(z * (1.0 / operator_norm(z)));
    proj = std::max(proj, (q.matrix() * q.matrix() - q.matrix()).norm());
    for (Index j = 0; j < q.dim(); ++j) diag = std::max(diag, std::abs(q(j, j).real() - 0.5));
  }
  bool ok = proj <= 1e-8 && diag <= 1e-10;

  int runs = 0, measured = 0, certified = 0;
  double slack = 1e300, best = 1e300;
  for (int r : {2, 3, 4}) {
    for (Index n : {4, 5, 6, 7, 8}) {
      if (r > 2 && n == 7) continue;
      const PavingResult pv = pave(random_zero_diagonal(n, rng), 0.5, r);
      ++runs;
      const double top = *std::max_element(pv.ratios.begin(), pv.ratios.end());
      best = std::min(best, top);
      if (!pv.vacuous) {
        ++certified;
        ok = ok && top <= pv.certified_ratio + 1e-8;
      }
      if (pv.measured_certificate < 1.0) {
        ++measured;
        slack = std::min(slack, pv.measured_certificate - top);
      }
    }
  }
  ok = ok && slack >= -1e-8;

  for (double eps : {0.25, 0.5, 0.6, 1.0, 2.0}) {
    const PavingResult z = pave(HermitianMatrix::zero(2), eps);
    ok = ok && z.r_used == static_cast<int>(std::ceil(36.0 / (eps * eps) - 1e-9));
  }
  for (int n : {2, 4, 10}) {
    for (double eps : {0.1, 0.5, 0.9}) {
      const PavingRBound b = paving_r_bound(n, eps);
      const double g = std::sqrt(1.0 + eps) - 1.0;
      ok = ok && b.r == static_cast<long long>(std::ceil(n / (g * g) - 1e-9)) &&
           b.r_simplified == static_cast<long long>(std::ceil(6.0 * n / (eps * eps) - 1e-9)) && b.r <= b.r_simplified;
    }
  }
  return {ok, fmt("||Q^2-Q|| <= %.2g, ", proj) + fmt("|diag - 1/2| <= %.2g; ", diag) + std::to_string(runs) +
                  " pavings, " + std::to_string(measured) + " measured certificates (min slack " + fmt("%.3g", slack) +
                  "), " + std::to_string(certified) +
                  " non-vacuous; r = (6/eps)^4 is beyond desk scale, only the measured certificates are checked"};
}

Outcome identities() {
  bool ok = true;
  std::string names;
  for (const Check& c : identity_suite(909, 200)) {
    ok = ok && c.pass;
    names += " " + c.name + (c.pass ? "" : "(FAIL)");
  }
  Rng rng(910);
  double jl = 0.0;
  for (int t = 0; t < 200; ++t) {
    const Index d = 1 + t % 4;
    const HermitianMatrix a = random_psd(d, d, rng) - random_psd(d, 1, rng);
    jl = std::max(jl, jameslee_relative_deviation(a, random_specs(1, d, 3, rng).front()));
  }
  ok = ok && jl <= 1e-8;
  return {ok, "200 trials:" + names + fmt("; jameslee worst %.3g", jl)};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> all{
      {1, "oracle equivalence", 60, oracle_equivalence},
      {2, "real-rootedness", 60, real_rootedness},
      {3, "interlacing family", 120, interlacing_family},
      {4, "root bound", 120, root_bound},
      {5, "barrier trace", 180, barrier_trace},
      {6, "partition constant", 600, partition_constant},
      {7, "weaver 18 -> 16", 300, weaver},
      {8, "paving", 300, paving},
      {9, "identity suite", 30, identities},
  };
  int failed = 0;
  for (const auto& c : all) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool pass = o.pass && secs < c.budget_s;
    if (!pass) ++failed;
    std::printf("criterion %d %-20s %s  %s [%.1fs / %.0fs]\n", c.id, c.name, pass ? "PASS" : "FAIL", o.summary.c_str(),
                secs, c.budget_s);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
