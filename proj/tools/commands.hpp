#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "interlacing/io.hpp"
#include "interlacing/upoly.hpp"
#include "interlacing/verify.hpp"

namespace interlace_cli {

struct Options {
  std::uint64_t seed = 0;
  std::optional<double> tol;
  std::optional<int> r;
  std::optional<double> eta;
  std::optional<double> eps;
  std::string suite;
};

struct Report {
  std::string command;
  std::string inputs_digest;
  std::optional<double> certified_bound;
  std::vector<double> achieved;
  std::vector<interlacing::Check> checks;
  std::vector<std::string> warnings;
  nlohmann::json details = nlohmann::json::object();
  std::optional<interlacing::RealUniPoly> polynomial;  // for --csv

  bool all_pass() const;
  nlohmann::json to_json() const;
};

/// Hex SHA-256 of the given bytes.
std::string sha256_hex(const std::string& bytes);

/// Ascending coefficients, one per line, 17 significant digits.
std::string coefficients_csv(const interlacing::RealUniPoly& p);

Report cmd_mixed_charpoly(const interlacing::Instance& in, const Options& opt);
Report cmd_partition(const interlacing::Instance& in, const Options& opt);
Report cmd_weaver(const interlacing::Instance& in, const Options& opt);
Report cmd_pave(const interlacing::Instance& in, const Options& opt);
Report cmd_barrier_trace(const interlacing::Instance& in, const Options& opt);
/// `in` may be null for the identities suite.
Report cmd_verify(const interlacing::Instance* in, const Options& opt);

enum ExitCode { kExitOk = 0, kExitParse = 2, kExitPrecondition = 3, kExitCheckFailed = 4 };

}  // namespace interlace_cli
