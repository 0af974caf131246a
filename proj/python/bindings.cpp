#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "interlacing/barrier.hpp"
#include "interlacing/error.hpp"
#include "interlacing/mixedchar.hpp"
#include "interlacing/solver.hpp"

namespace py = pybind11;
using namespace interlacing;

namespace {

std::vector<HermitianMatrix> hermitians(const std::vector<MatrixC>& ms) {
  std::vector<HermitianMatrix> out;
  out.reserve(ms.size());
  for (const auto& m : ms) out.emplace_back(m);
  return out;
}

std::vector<RandomVectorSpec> specs_of(const std::vector<std::pair<std::vector<VectorC>, std::vector<double>>>& raw) {
  std::vector<RandomVectorSpec> out;
  for (const auto& [values, probs] : raw) {
    if (values.size() != probs.size()) throw Error(Errc::LengthMismatch, "values and probs differ in length");
    std::vector<Atom> atoms;
    for (std::size_t j = 0; j < values.size(); ++j) atoms.push_back(Atom{values[j], probs[j]});
    out.emplace_back(std::move(atoms));
  }
  return out;
}

py::dict partition_dict(const PartitionResult& pr) {
  py::dict d;
  d["parts"] = pr.parts;
  d["part_norms"] = pr.part_norms;
  d["certified_bound"] = pr.certified_bound;
  d["delta"] = pr.delta;
  d["r"] = pr.r;
  d["root_bound"] = pr.root_bound;
  d["vacuous"] = pr.vacuous;
  d["warnings"] = pr.warnings;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Mixed characteristic polynomials, interlacing families, partitions and pavings";

  py::register_exception<Error>(m, "InterlacingError", PyExc_ValueError);

  m.def(
      "char_poly", [](const MatrixC& a) { return char_poly(HermitianMatrix(a)).coeffs(); }, py::arg("matrix"),
      "det(xI - A), ascending coefficients");
  m.def(
      "roots", [](const std::vector<double>& c) { return roots(RealUniPoly(c)); }, py::arg("coeffs"));
  m.def(
      "max_root", [](const std::vector<double>& c) { return max_root(RealUniPoly(c)); }, py::arg("coeffs"));
  m.def(
      "is_real_rooted", [](const std::vector<double>& c, double tol) { return is_real_rooted(RealUniPoly(c), tol); },
      py::arg("coeffs"), py::arg("tol") = kDefaultRealRootTol);
  m.def(
      "mixed_charpoly",
      [](const std::vector<MatrixC>& as) { return mixed_charpoly(CovarianceList(hermitians(as))).coeffs(); },
      py::arg("covariances"), "mu[A_1..A_m](x), ascending coefficients");
  m.def(
      "mixed_discriminant", [](const std::vector<MatrixC>& bs) { return mixed_discriminant(hermitians(bs)); },
      py::arg("matrices"));
  m.def(
      "expected_charpoly",
      [](const std::vector<std::pair<std::vector<VectorC>, std::vector<double>>>& raw) {
        return brute_force_expected_charpoly(specs_of(raw)).coeffs();
      },
      py::arg("random_vectors"), "E det(xI - sum v v^*) by enumeration; each item is (values, probs)");
  m.def(
      "partition", [](const std::vector<VectorC>& us, int r) { return partition_dict(partition_r(us, r, true)); },
      py::arg("vectors"), py::arg("r") = 2);
  m.def(
      "weaver", [](const std::vector<VectorC>& ws, double eta) { return partition_dict(weaver_partition(ws, eta)); },
      py::arg("vectors"), py::arg("eta") = 18.0);
  m.def("weaver_bound", &weaver_bound, py::arg("eta"));
  m.def(
      "pave",
      [](const MatrixC& t, double eps, std::optional<int> r) {
        const PavingResult pv = pave(HermitianMatrix(t), eps, r);
        py::dict d;
        std::vector<std::vector<long>> parts;
        for (const auto& p : pv.parts) parts.emplace_back(p.begin(), p.end());
        d["parts"] = parts;
        d["ratios"] = pv.ratios;
        d["r_used"] = pv.r_used;
        d["r_theorem"] = pv.r_theorem;
        d["certified_ratio"] = pv.certified_ratio;
        d["measured_certificate"] = pv.measured_certificate;
        d["vacuous"] = pv.vacuous;
        return d;
      },
      py::arg("matrix"), py::arg("eps"), py::arg("r") = py::none());
  m.def(
      "paving_r_bound",
      [](int n, double eps) {
        const PavingRBound b = paving_r_bound(n, eps);
        return std::make_pair(b.r, b.r_simplified);
      },
      py::arg("n"), py::arg("eps"));
  m.def(
      "barrier_trace",
      [](const std::vector<MatrixC>& as, double eps) {
        const BarrierTrace tr = run_barrier_trace(CovarianceList(hermitians(as)), eps);
        py::dict d;
        d["t"] = tr.t;
        d["delta"] = tr.delta;
        d["phi"] = tr.phi;
        d["final_root"] = tr.final_root;
        d["bound"] = tr.bound;
        d["symbolic"] = tr.symbolic;
        std::vector<std::vector<double>> values;
        for (const auto& s : tr.steps) values.push_back(s.barrier_values);
        d["barrier_values"] = values;
        d["steps_ok"] = tr.all_steps_ok();
        return d;
      },
      py::arg("covariances"), py::arg("eps"));
}
