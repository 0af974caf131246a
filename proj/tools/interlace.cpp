#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "interlacing/error.hpp"

using namespace interlace_cli;

namespace {

int exit_code_for(interlacing::Errc code) {
  using interlacing::Errc;
  switch (code) {
    case Errc::ParseError:
    case Errc::SchemaError:
    case Errc::UnknownSuite: return kExitParse;
    default: return kExitPrecondition;
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw interlacing::Error(interlacing::Errc::ParseError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"interlace: mixed characteristic polynomials, partitions and pavings"};
  app.require_subcommand(1);

  Options opt;
  std::string input;
  std::string csv;
  app.add_option("--seed", opt.seed, "seed for randomized checks")->default_val(0);
  app.add_option("--tol", opt.tol, "override check tolerances");
  app.add_option("--csv", csv, "write polynomial coefficients (ascending) to this file");

  auto* mc = app.add_subcommand("mixed-charpoly", "mixed characteristic polynomial of covariances or random vectors");
  auto* part = app.add_subcommand("partition", "r-way partition of an isotropic vector set");
  auto* weav = app.add_subcommand("weaver", "two-way split of vectors with sum w w^* = eta I");
  auto* pv = app.add_subcommand("pave", "pave a zero-diagonal self-adjoint matrix");
  auto* bt = app.add_subcommand("barrier-trace", "replay the barrier induction on covariances summing to I");
  auto* ver = app.add_subcommand("verify", "run an invariant suite");

  for (auto* sub : {mc, part, weav, pv, bt}) sub->add_option("input", input, "instance file")->required();
  ver->add_option("input", input, "instance file (optional for identities)");
  part->add_option("--r", opt.r, "number of parts (default 2)");
  weav->add_option("--eta", opt.eta, "isotropy constant (default 18)");
  pv->add_option("--eps", opt.eps, "target ratio (default 0.5)");
  pv->add_option("--r", opt.r, "parts per dilation partition (default ceil(36/eps^2))");
  bt->add_option("--eps", opt.eps, "trace bound (default max trace A_i)");
  ver->add_option("--suite", opt.suite, "identities | tree | oracle | stability")->required();
  for (auto* sub : {mc, part, weav, pv, bt, ver}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitParse;
  }

  try {
    std::string bytes;
    interlacing::Instance inst;
    const bool have_input = !input.empty();
    if (have_input) {
      bytes = read_file(input);
      inst = interlacing::parse_instance(bytes);
    }
    Report rep;
    if (*mc) rep = cmd_mixed_charpoly(inst, opt);
    else if (*part) rep = cmd_partition(inst, opt);
    else if (*weav) rep = cmd_weaver(inst, opt);
    else if (*pv) rep = cmd_pave(inst, opt);
    else if (*bt) rep = cmd_barrier_trace(inst, opt);
    else rep = cmd_verify(have_input ? &inst : nullptr, opt);
    rep.inputs_digest = sha256_hex(bytes);

    if (!csv.empty()) {
      if (rep.polynomial) {
        std::ofstream out(csv, std::ios::binary);
        out << coefficients_csv(*rep.polynomial);
      } else {
        rep.warnings.push_back("--csv ignored: this command produces no polynomial");
      }
    }
    std::cout << rep.to_json().dump(2) << "\n";
    return rep.all_pass() ? kExitOk : kExitCheckFailed;
  } catch (const interlacing::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPrecondition;
  }
}
