#include <gtest/gtest.h>

#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "mpsgs/hamiltonian.hpp"
#include "mpsgs/json_io.hpp"

namespace {

using namespace mpsgs;
using json::Json;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "mpsgs");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name, const std::string& contents) {
  const auto path = std::filesystem::temp_directory_path() / ("mpsgs_test_" + name);
  std::ofstream(path) << contents;
  return path;
}

TEST(Cli, ClassifySigmaIsC49) {
  const auto path = temp_file("sigma.json", R"({"basis": [{"v0":[0,0],"v1":[0,0],"v2":[0,0],"u":[1,0]}]})");
  const Result r = invoke({"classify", path.string()});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const Json j = json::parse(r.out);
  EXPECT_EQ(j["case_id"], "C49");
  EXPECT_EQ(j["canonical_basis"].size(), 1u);
}

TEST(Cli, ClassifyRejectsUnlistedOrbit) {
  const auto path = temp_file("unlisted.json", R"({"basis": [
      {"v0":[1,0],"v1":[0,0],"v2":[0,0],"u":[0,0]},
      {"v0":[0,0],"v1":[0,0],"v2":[1,0],"u":[0,0]},
      {"v0":[0,0],"v1":[0,0],"v2":[0,0],"u":[1,0]}]})");
  EXPECT_EQ(invoke({"classify", path.string()}).code, cli::kExitValidation);
}

TEST(Cli, VerifyF107FiveSites) {
  const Result r = invoke({"verify", "--family", "F107", "--n-sites", "5", "--params", R"({"g": 1})"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const Json j = json::parse(r.out);
  EXPECT_EQ(j["kernel_dim"], 13);
  EXPECT_EQ(j["all_pass"], true);
}

TEST(Cli, VerifyClaimFailureExitCode) {
  const Result r = invoke({"verify", "--family", "F112", "--n-sites", "4", "--params",
                           R"({"g1": 1, "g2": 1, "g3": [0, 0], "nu": [1, 0], "nu_prime": [-1, 0]})"});
  EXPECT_EQ(r.code, cli::kExitClaimFailed);
  EXPECT_EQ(json::parse(r.out)["all_pass"], false);
}

TEST(Cli, ValidationExitCodes) {
  EXPECT_EQ(invoke({"verify", "--family", "F999", "--n-sites", "4", "--params", "{}"}).code, cli::kExitValidation);
  EXPECT_EQ(invoke({"verify", "--family", "F107", "--n-sites", "4", "--params", R"({"g": -1})"}).code,
            cli::kExitValidation);
  EXPECT_EQ(invoke({"verify", "--family", "F107", "--n-sites", "40", "--params", R"({"g": 1})"}).code,
            cli::kExitValidation);
  EXPECT_EQ(invoke({"verify", "--family", "F107", "--n-sites", "4", "--params", "{bad"}).code, cli::kExitValidation);
  EXPECT_EQ(invoke({"verify", "--family", "F107"}).code, cli::kExitValidation);
  EXPECT_EQ(invoke({}).code, cli::kExitValidation);
  EXPECT_EQ(invoke({"classify", "/nonexistent/file.json"}).code, cli::kExitValidation);
}

TEST(Cli, ParamsFromFile) {
  const auto path = temp_file("f107.json", R"({"g": 2})");
  const Result r = invoke({"verify", "--family", "F107", "--n-sites", "4", "--params", "@" + path.string()});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_EQ(json::parse(r.out)["kernel_dim"], 8);
}

TEST(Cli, BuildHJson) {
  const Result r = invoke({"build-h", "--family", "F107", "--n-sites", "3", "--params", R"({"g": 1})"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const Json j = json::parse(r.out);
  EXPECT_EQ(j["dim"], 8);
  EXPECT_EQ(j["matrix"].size(), 8u);
  // 000 has two double-zero bonds.
  EXPECT_EQ(j["matrix"][0][0][0].get<double>(), 8.0);
}

TEST(Cli, BuildHBinaryLayout) {
  const Result r =
      invoke({"build-h", "--family", "F107", "--n-sites", "2", "--params", R"({"g": 1})", "--format", "binary"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  ASSERT_EQ(r.out.size(), 4u + 4u + 16u * 16u);
  EXPECT_EQ(r.out.substr(0, 4), "MPSH");
  std::uint32_t n = 0;
  for (int i = 3; i >= 0; --i) n = (n << 8) | static_cast<unsigned char>(r.out[4 + i]);
  EXPECT_EQ(n, 2u);
  // Entry (0,0) real part, little-endian f64.
  std::uint64_t bits = 0;
  for (int i = 7; i >= 0; --i) bits = (bits << 8) | static_cast<unsigned char>(r.out[8 + i]);
  double re;
  std::memcpy(&re, &bits, sizeof re);
  EXPECT_EQ(re, 4.0);
  EXPECT_EQ(invoke({"build-h", "--family", "F107", "--n-sites", "2", "--params", R"({"g": 1})", "--format", "xml"})
                .code,
            cli::kExitValidation);
}

TEST(Cli, GroundStatesList) {
  const Result r = invoke({"ground-states", "--family", "F109", "--n-sites", "3", "--params",
                           R"({"g1": 1, "g2": 1, "g3": [0, 0]})"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const Json j = json::parse(r.out);
  ASSERT_EQ(j.size(), 2u);
  EXPECT_EQ(j[0]["label"], "psi0");
  EXPECT_EQ(j[0]["amplitudes"].size(), 8u);
}

TEST(Cli, MpsContraction) {
  const Result r = invoke({"mps", "--a0", "[[[1,0],[0,0]],[[0,0],[-1,0]]]", "--a1", "[[[0,0],[0,1]],[[0,1],[0,0]]]",
                           "--n-sites", "2"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const Json j = json::parse(r.out);
  EXPECT_EQ(j["bond_dim"], 2);
  EXPECT_EQ(j["zero_norm"], false);
  EXPECT_EQ(j["raw_amplitudes"][0][0].get<double>(), 2.0);
  EXPECT_EQ(j["raw_amplitudes"][3][0].get<double>(), -2.0);
  EXPECT_NEAR(j["z"].get<double>(), 8.0, 1e-12);
}

TEST(Cli, SweepF109Grid) {
  const Result r = invoke({"sweep", "--family", "F109", "--n-sites", "6", "--grid", "g3:0..1:5", "--params",
                           R"({"g1": 1, "g2": 1})"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  std::istringstream lines(r.out);
  std::string header, line;
  std::getline(lines, header);
  EXPECT_EQ(header, "g3,ground_energy,kernel_dim,max_residual,all_pass");
  int rows = 0;
  while (std::getline(lines, line)) ++rows;
  EXPECT_EQ(rows, 5);
}

TEST(Cli, SweepRejectsInvalidPointsUpFront) {
  // g3 = 2 violates g1 g2 >= |g3|^2 before any point runs.
  const Result r = invoke({"sweep", "--family", "F109", "--n-sites", "4", "--grid", "g3:0..2:3", "--params",
                           R"({"g1": 1, "g2": 1})"});
  EXPECT_EQ(r.code, cli::kExitValidation);
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(invoke({"sweep", "--family", "F109", "--n-sites", "4", "--grid", "g3:0..1"}).code, cli::kExitValidation);
}

TEST(Cli, DeterministicOutput) {
  const std::vector<std::string> verify = {"verify", "--family", "F105", "--n-sites", "6", "--params",
                                           R"({"g": 1, "nu": [1, 0], "nu_prime": [-1, 0]})"};
  const std::vector<std::string> sweep = {"sweep",  "--family", "F109",    "--n-sites", "5",
                                          "--grid", "g1:1..2:3", "--params", R"({"g2": 2, "g3": [0.5, 0]})"};
  EXPECT_EQ(invoke(verify).out, invoke(verify).out);
  EXPECT_EQ(invoke(sweep).out, invoke(sweep).out);
}

TEST(Cli, OutputFile) {
  const auto path = std::filesystem::temp_directory_path() / "mpsgs_test_out.json";
  std::filesystem::remove(path);
  const Result r = invoke({"verify", "--family", "F107", "--n-sites", "3", "--params", R"({"g": 1})", "-o",
                           path.string()});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  std::ifstream in(path);
  const std::string contents((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  EXPECT_EQ(json::parse(contents)["kernel_dim"], 5);
}

}  // namespace
