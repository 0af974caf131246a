#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>

#include <openssl/evp.h>

#include "interlacing/barrier.hpp"
#include "interlacing/error.hpp"
#include "interlacing/solver.hpp"

namespace interlace_cli {

using namespace interlacing;
using nlohmann::json;

namespace {

json complex_list(const std::vector<Complex>& zs) {
  json a = json::array();
  for (auto z : zs) a.push_back(json::array({z.real(), z.imag()}));
  return a;
}

double tol_or(const Options& opt, double fallback) { return opt.tol.value_or(fallback); }

void require_kind(const Instance& in, std::initializer_list<InstanceKind> kinds) {
  for (auto k : kinds) {
    if (in.kind == k) return;
  }
  throw Error(Errc::SchemaError, "instance kind '" + std::string(kind_name(in.kind)) + "' not accepted by this command");
}

template <class Parts>
json parts_json(const Parts& parts) {
  json a = json::array();
  for (const auto& p : parts) a.push_back(p);
  return a;
}

// Largest increase of the greedy path roots from one depth to the next.
double path_increase(const std::vector<double>& roots) {
  double worst = 0.0;
  for (std::size_t k = 1; k < roots.size(); ++k) worst = std::max(worst, roots[k] - roots[k - 1]);
  return worst;
}

void add_partition_checks(Report& rep, const PartitionResult& pr, double tol) {
  rep.achieved = pr.part_norms;
  const double top = pr.part_norms.empty() ? 0.0 : *std::max_element(pr.part_norms.begin(), pr.part_norms.end());
  if (pr.certified_bound) rep.checks.push_back(make_check("part_norms_within_bound", *pr.certified_bound + tol - top));
  rep.checks.push_back(make_check("greedy_path_nonincreasing", tol - path_increase(pr.path_roots)));
  rep.details["parts"] = parts_json(pr.parts);
  rep.details["part_norms"] = pr.part_norms;
  rep.details["delta"] = pr.delta;
  rep.details["r"] = pr.r;
  rep.details["root_bound"] = pr.root_bound;
  rep.details["path_roots"] = pr.path_roots;
  rep.details["vacuous"] = pr.vacuous;
  rep.warnings.insert(rep.warnings.end(), pr.warnings.begin(), pr.warnings.end());
  if (pr.vacuous) rep.warnings.push_back("certified bound is vacuous for this instance");
}

}  // namespace

bool Report::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

json Report::to_json() const {
  json checks_json = json::array();
  for (const auto& c : checks) {
    json cj = {{"name", c.name}, {"pass", c.pass}, {"slack", c.slack}};
    if (!c.detail.empty()) cj["detail"] = c.detail;
    checks_json.push_back(std::move(cj));
  }
  json out = {
      {"command", command},
      {"inputs_digest", inputs_digest},
      {"certified_bound", certified_bound ? json(*certified_bound) : json(nullptr)},
      {"achieved", achieved},
      {"checks", std::move(checks_json)},
      {"warnings", warnings},
      {"details", details},
  };
  return out;
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[md[i] >> 4]);
    out.push_back(hex[md[i] & 15]);
  }
  return out;
}

std::string coefficients_csv(const RealUniPoly& p) {
  std::string out;
  char buf[64];
  for (double c : p.coeffs()) {
    std::snprintf(buf, sizeof buf, "%.17g\n", c);
    out += buf;
  }
  return out;
}

Report cmd_mixed_charpoly(const Instance& in, const Options& opt) {
  require_kind(in, {InstanceKind::Covariances, InstanceKind::RandomVectors});
  Report rep;
  rep.command = "mixed-charpoly";
  const CovarianceList as = in.covariance_list();
  const RealUniPoly mu = mixed_charpoly(as);
  rep.polynomial = mu;
  const double top = max_root(mu);
  rep.achieved = {top};
  rep.details["coefficients"] = mu.coeffs();
  rep.details["roots"] = complex_list(roots(mu));
  rep.details["max_root"] = top;
  rep.checks.push_back(make_check("real_rooted", tol_or(opt, 1e-6) - max_relative_imag(mu)));

  if (in.kind == InstanceKind::RandomVectors) {
    const auto specs = in.specs();
    double leaves = 1.0;
    for (const auto& s : specs) leaves *= static_cast<double>(s.support());
    if (leaves <= static_cast<double>(kMaxOutcomeEnumeration)) {
      const RealUniPoly bf = brute_force_expected_charpoly(specs);
      double dev = 0.0;
      const RealUniPoly diff = mu - bf;
      for (double c : diff.coeffs()) dev = std::max(dev, std::abs(c));
      dev /= std::max(1.0, bf.scale());
      rep.details["oracle_deviation"] = dev;
      rep.checks.push_back(make_check("oracle_agreement", tol_or(opt, 1e-9) - dev));
    } else {
      rep.warnings.push_back("support too large for the brute-force oracle; skipped");
    }
  }
  return rep;
}

Report cmd_partition(const Instance& in, const Options& opt) {
  require_kind(in, {InstanceKind::Vectors});
  Report rep;
  rep.command = "partition";
  const int r = opt.r.value_or(2);
  const PartitionResult pr = partition_r(in.vectors, r, false);
  rep.certified_bound = pr.certified_bound;
  add_partition_checks(rep, pr, tol_or(opt, 1e-8));
  return rep;
}

Report cmd_weaver(const Instance& in, const Options& opt) {
  require_kind(in, {InstanceKind::Vectors});
  Report rep;
  rep.command = "weaver";
  const double eta = opt.eta.value_or(18.0);
  const PartitionResult pr = weaver_partition(in.vectors, eta);
  rep.certified_bound = pr.certified_bound;
  add_partition_checks(rep, pr, tol_or(opt, 1e-8));
  rep.details["eta"] = eta;

  // quadratic forms sum_{i in S_j} |<u, w_i>|^2 along random unit u
  const Index d = in.vectors.front().size();
  std::mt19937_64 rng(opt.seed);
  std::normal_distribution<double> g(0.0, 1.0);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    VectorC u(d);
    for (Index k = 0; k < d; ++k) {
      const double re = g(rng);
      const double im = g(rng);
      u(k) = Complex(re, im);
    }
    u.normalize();
    for (const auto& part : pr.parts) {
      double q = 0.0;
      for (std::size_t i : part) q += std::norm(u.dot(in.vectors[i]));
      worst = std::max(worst, q);
    }
  }
  rep.details["max_quadratic_form"] = worst;
  rep.checks.push_back(make_check("quadratic_forms_within_bound", *pr.certified_bound + tol_or(opt, 1e-6) - worst));
  return rep;
}

Report cmd_pave(const Instance& in, const Options& opt) {
  require_kind(in, {InstanceKind::Matrix});
  Report rep;
  rep.command = "pave";
  const double eps = opt.eps.value_or(0.5);
  const PavingResult pv = pave(in.hermitian(), eps, opt.r);
  const double tol = tol_or(opt, 1e-8);
  rep.achieved = pv.ratios;
  const double top = pv.ratios.empty() ? 0.0 : *std::max_element(pv.ratios.begin(), pv.ratios.end());
  if (!pv.vacuous && pv.certified_ratio <= eps) {
    rep.certified_bound = eps;
    rep.checks.push_back(make_check("ratios_within_eps", eps + tol - top));
  }
  if (pv.measured_certificate < 1.0) {
    rep.checks.push_back(make_check("ratios_within_measured_certificate", pv.measured_certificate + tol - top));
  }
  rep.checks.push_back(make_check("part_count", static_cast<double>(pv.max_parts) - static_cast<double>(pv.parts.size())));
  rep.details["parts"] = parts_json(pv.parts);
  rep.details["ratios"] = pv.ratios;
  rep.details["epsilon"] = eps;
  rep.details["r_used"] = pv.r_used;
  rep.details["r_squared"] = pv.max_parts;
  rep.details["r_theorem"] = pv.r_theorem;
  rep.details["inner_bound"] = pv.inner_bound;
  rep.details["certified_ratio"] = pv.certified_ratio;
  rep.details["measured_certificate"] = pv.measured_certificate;
  rep.details["vacuous"] = pv.vacuous;
  rep.details["norm"] = pv.norm;
  rep.warnings = pv.warnings;
  rep.warnings.push_back("the r = (6/eps)^4 guarantee is asymptotic; at this size only the measured ratios are certified");
  return rep;
}

Report cmd_barrier_trace(const Instance& in, const Options& opt) {
  require_kind(in, {InstanceKind::Covariances, InstanceKind::RandomVectors});
  Report rep;
  rep.command = "barrier-trace";
  const CovarianceList as = in.covariance_list();
  double eps = 0.0;
  for (const auto& a : as.mats()) eps = std::max(eps, a.trace());
  eps = opt.eps.value_or(eps);
  BarrierOptions bo;
  bo.seed = opt.seed;
  const BarrierTrace tr = run_barrier_trace(as, eps, bo);
  const double tol = tol_or(opt, 1e-8);
  rep.certified_bound = tr.bound;
  rep.achieved = {tr.final_root};
  rep.polynomial = mixed_charpoly(as);
  rep.checks.push_back(make_check("endpoint_root_bound", tr.bound + tol - tr.final_root));

  json steps = json::array();
  double worst_phi = -std::numeric_limits<double>::infinity();
  double worst_shift = std::numeric_limits<double>::infinity();
  for (const auto& s : tr.steps) {
    for (double v : s.barrier_values) worst_phi = std::max(worst_phi, v);
    if (s.k > 0) worst_shift = std::min(worst_shift, s.shift_slack);
    steps.push_back({{"k", s.k},
                     {"point", s.point},
                     {"barrier_values", s.barrier_values},
                     {"above_roots", s.above_roots},
                     {"phi_ok", s.phi_ok},
                     {"shift_slack", s.shift_slack},
                     {"chain_ok", s.chain_ok}});
  }
  if (tr.symbolic) {
    rep.checks.push_back(make_check("barrier_at_most_phi", tr.phi + tol - worst_phi));
    if (std::isfinite(worst_shift)) rep.checks.push_back(make_check("shift_steps", worst_shift + tol));
  } else {
    rep.warnings.push_back("instance beyond the symbolic limits (m <= 5, d <= 4); endpoint bound only");
  }
  rep.details["epsilon"] = tr.epsilon;
  rep.details["t"] = tr.t;
  rep.details["delta"] = tr.delta;
  rep.details["phi"] = tr.phi;
  rep.details["symbolic"] = tr.symbolic;
  rep.details["steps"] = std::move(steps);
  rep.details["final_root"] = tr.final_root;
  return rep;
}

Report cmd_verify(const Instance* in, const Options& opt) {
  Report rep;
  rep.command = "verify";
  rep.details["suite"] = opt.suite;
  auto need = [&](std::initializer_list<InstanceKind> kinds) -> const Instance& {
    if (!in) throw Error(Errc::SchemaError, "suite '" + opt.suite + "' needs an input file");
    require_kind(*in, kinds);
    return *in;
  };
  if (opt.suite == "identities") {
    rep.checks = identity_suite(opt.seed, 200);
  } else if (opt.suite == "tree") {
    rep.checks = tree_suite(need({InstanceKind::RandomVectors}).specs(), opt.seed);
  } else if (opt.suite == "oracle") {
    rep.checks = oracle_suite(need({InstanceKind::RandomVectors}).specs());
  } else if (opt.suite == "stability") {
    rep.checks = stability_suite(need({InstanceKind::Covariances, InstanceKind::RandomVectors}).covariance_list(), opt.seed);
  } else {
    throw Error(Errc::UnknownSuite, "unknown suite '" + opt.suite + "' (identities, tree, oracle, stability)");
  }
  return rep;
}

}  // namespace interlace_cli
