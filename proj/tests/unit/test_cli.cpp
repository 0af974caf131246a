#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "commands.hpp"

using nlohmann::json;

namespace {

struct Result {
  int code = -1;
  std::string out;
};

Result run(const std::string& args) {
  const std::string cmd = std::string(INTERLACE_BINARY) + " " + args + " 2>/dev/null";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const std::string& name) { return std::string(INTERLACE_DATA_DIR) + "/" + name; }

bool all_checks_pass(const json& rep) {
  for (const auto& c : rep.at("checks")) {
    if (!c.at("pass").get<bool>()) return false;
  }
  return true;
}

}  // namespace

TEST(Cli, MixedCharpoly) {
  const Result r = run("mixed-charpoly " + data("random_vectors.json"));
  ASSERT_EQ(r.code, 0) << r.out;
  const json rep = json::parse(r.out);
  EXPECT_EQ(rep.at("command"), "mixed-charpoly");
  EXPECT_EQ(rep.at("inputs_digest").get<std::string>().size(), 64u);
  EXPECT_TRUE(all_checks_pass(rep));
  bool saw_oracle = false;
  for (const auto& c : rep.at("checks")) saw_oracle |= c.at("name") == "oracle_agreement";
  EXPECT_TRUE(saw_oracle);
}

TEST(Cli, CsvDump) {
  const std::string path = ::testing::TempDir() + "interlace_coeffs.csv";
  const Result r = run("--csv " + path + " mixed-charpoly " + data("isotropic_covariances.json"));
  ASSERT_EQ(r.code, 0);
  std::ifstream in(path);
  std::string line;
  int lines = 0;
  double last = 0.0;
  while (std::getline(in, line)) {
    last = std::stod(line);
    ++lines;
  }
  EXPECT_EQ(lines, 4);
  EXPECT_EQ(last, 1.0);
}

TEST(Cli, PartitionAndWeaver) {
  const Result p = run("partition " + data("parseval_8x3.json") + " --r 3");
  ASSERT_EQ(p.code, 0) << p.out;
  const json rep = json::parse(p.out);
  EXPECT_TRUE(all_checks_pass(rep));
  for (double a : rep.at("achieved")) EXPECT_LE(a, rep.at("certified_bound").get<double>() + 1e-8);

  const Result w = run("weaver " + data("weaver_eta18.json"));
  ASSERT_EQ(w.code, 0) << w.out;
  const json wr = json::parse(w.out);
  EXPECT_NEAR(wr.at("certified_bound").get<double>(), 16.0, 1e-12);
  for (double a : wr.at("achieved")) EXPECT_LE(a, 16.0 + 1e-8);
}

TEST(Cli, PartitionWithoutCertificateWarns) {
  const Result p = run("partition " + data("not_parseval.json"));
  ASSERT_EQ(p.code, 0) << p.out;
  EXPECT_FALSE(json::parse(p.out).at("warnings").empty());
}

TEST(Cli, Pave) {
  const Result r = run("pave " + data("zero_diagonal_8.json") + " --r 2");
  ASSERT_EQ(r.code, 0) << r.out;
  const json rep = json::parse(r.out);
  EXPECT_TRUE(all_checks_pass(rep));
  EXPECT_FALSE(rep.at("warnings").empty());
}

TEST(Cli, BarrierTrace) {
  const Result r = run("barrier-trace " + data("isotropic_covariances.json"));
  ASSERT_EQ(r.code, 0) << r.out;
  const json rep = json::parse(r.out);
  EXPECT_TRUE(all_checks_pass(rep));
  EXPECT_TRUE(rep.at("details").contains("steps"));
}

TEST(Cli, VerifySuites) {
  EXPECT_EQ(run("verify --suite identities").code, 0);
  EXPECT_EQ(run("verify --suite oracle " + data("random_vectors.json")).code, 0);
  EXPECT_EQ(run("verify --suite tree " + data("random_vectors.json")).code, 0);
  EXPECT_EQ(run("verify --suite stability " + data("isotropic_covariances.json")).code, 0);
  EXPECT_EQ(run("verify --suite bogus").code, 2);
}

TEST(Cli, Deterministic) {
  const std::string args = "--seed 7 verify --suite tree " + data("random_vectors.json");
  EXPECT_EQ(run(args).out, run(args).out);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("mixed-charpoly " + data("malformed.json")).code, 2);
  EXPECT_EQ(run("mixed-charpoly " + data("unknown_kind.json")).code, 2);
  EXPECT_EQ(run("mixed-charpoly " + data("bad_probs.json")).code, 2);
  EXPECT_EQ(run("partition").code, 2);
  EXPECT_EQ(run("weaver " + data("parseval_8x3.json")).code, 3);
  EXPECT_EQ(run("pave " + data("parseval_8x3.json")).code, 2);
  EXPECT_EQ(run("pave " + data("nonzero_diagonal.json")).code, 3);
  EXPECT_EQ(run("barrier-trace " + data("random_vectors.json")).code, 3);
}

TEST(Cli, Helpers) {
  EXPECT_EQ(interlace_cli::sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  EXPECT_EQ(interlace_cli::coefficients_csv(interlacing::RealUniPoly({0.1, 1.0})), "0.10000000000000001\n1\n");
}
