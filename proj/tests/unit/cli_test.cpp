#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "imd/cli/run.hpp"
#include "json.hpp"

namespace {

namespace cli = imd::cli;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<const char*> args) {
  args.insert(args.begin(), "imd");
  std::ostringstream out, err;
  const int code = cli::main_entry(static_cast<int>(args.size()), args.data(), out, err);
  return {code, out.str(), err.str()};
}

TEST(Cli, Critical) {
  const auto r = run({"critical"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j["h_c"].get<double>(), -0.34411, 1e-5);
  EXPECT_NEAR(j["J_c"].get<double>(), 1.45711, 1e-5);
  EXPECT_NEAR(j["m_c"].get<double>(), 0.585786, 1e-6);
}

TEST(Cli, PhaseAtZeroCoupling) {
  const auto r = run({"phase", "--h", "0", "--J", "0"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["regime"], "unique");
  EXPECT_NEAR(j["maximizers"][0].get<double>(), 0.618034, 1e-6);
}

TEST(Cli, PhaseSweepIsDeterministicAcrossThreadCounts) {
  const std::vector<const char*> args{"phase", "--hmin", "-1", "--hmax", "0.5", "--hsteps", "7",
                                      "--jmin", "0", "--jmax", "3", "--jsteps", "5"};
  setenv("IMD_THREADS", "1", 1);
  const auto serial = run(args);
  setenv("IMD_THREADS", "4", 1);
  const auto parallel = run(args);
  unsetenv("IMD_THREADS");
  ASSERT_EQ(serial.code, 0) << serial.err;
  EXPECT_EQ(serial.out, parallel.out);
  EXPECT_EQ(nlohmann::json::parse(serial.out)["phase"].size(), 35u);
}

TEST(Cli, GammaCsv) {
  const auto r = run({"gamma", "--jmin", "2", "--jmax", "3", "--steps", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  EXPECT_EQ(header, "J,h,m1,m2,lambda1,lambda2,rho1,rho2");
  EXPECT_EQ(row.substr(0, 2), "2,");
  EXPECT_NEAR(std::stod(row.substr(2)), -0.41281739308863946, 1e-13);
}

TEST(Cli, DistRawAndScaled) {
  const auto raw = run({"dist", "--N", "4"});
  ASSERT_EQ(raw.code, 0) << raw.err;
  EXPECT_EQ(raw.out.substr(0, raw.out.find('\n')), "k,S,log_weight,probability");
  const auto scaled = run({"dist", "--N", "4", "--eta", "1", "--format", "json"});
  ASSERT_EQ(scaled.code, 0) << scaled.err;
  EXPECT_EQ(nlohmann::json::parse(scaled.out)["atoms"][1]["position"], 0.5);
}

TEST(Cli, LaplaceRows) {
  const auto r = run({"laplace", "--N", "10", "--N", "100", "--h", "0.5"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 3);
}

TEST(Cli, VerifyExactPrintsComparisons) {
  const auto r = run({"verify", "--suite", "exact"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("N=8 h=+1 J=2  log Z brute"), std::string::npos);
  EXPECT_NE(r.out.find("PASS   2"), std::string::npos);
  EXPECT_NE(r.out.find("PASS   5"), std::string::npos);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"phase", "--J", "-1"}).code, cli::kExitDomain);
  EXPECT_EQ(run({"gamma", "--jmin", "1.0", "--jmax", "2"}).code, cli::kExitDomain);
  EXPECT_EQ(run({"phase", "--bogus"}).code, cli::kExitUsage);
  EXPECT_EQ(run({}).code, cli::kExitUsage);
  EXPECT_EQ(run({"verify", "--suite", "nope"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"dist", "--N", "4", "--h", "inf"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"critical", "--format", "xml"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"-o", "/nonexistent-dir/out.csv", "critical"}).code, cli::kExitIo);
  EXPECT_EQ(run({"--help"}).code, cli::kExitOk);
  setenv("IMD_THREADS", "zero", 1);
  EXPECT_EQ(run({"critical"}).code, cli::kExitUsage);
  unsetenv("IMD_THREADS");
}

TEST(Cli, WritesOutputFile) {
  const auto path = std::filesystem::temp_directory_path() / "imd_cli_test_gamma.csv";
  const auto r = run({"gamma", "--jmin", "2", "--jmax", "2", "--steps", "1", "-o", path.c_str()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "J,h,m1,m2,lambda1,lambda2,rho1,rho2");
  std::filesystem::remove(path);
}

}  // namespace
