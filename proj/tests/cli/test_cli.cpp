// Copyright 2026 The qthermo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int exit_code;
  std::string out;
};

// Runs the CLI with stderr folded into the captured output.
RunResult run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " \"" QTHERMO_CLI_PATH "\" " + args + " 2>&1";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  const int status = ::pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string scenario(const std::string& name) { return (fs::path(QTHERMO_SCENARIO_DIR) / name).string(); }

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("qthermo_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

TEST_F(Cli, SimulateBundledScenario) {
  const RunResult r = run("simulate --scenario " + scenario("two_qubit_exchange.json") + " --out " + (dir_ / "o").string());
  ASSERT_EQ(r.exit_code, 0) << r.out;
  const nlohmann::json report = nlohmann::json::parse(slurp(dir_ / "o" / "two_qubit_exchange.report.json"));
  EXPECT_LE(report.at("residual_drift_split").get<double>(), 1e-8);
  EXPECT_TRUE(report.contains("bounds"));
  const std::string csv = slurp(dir_ / "o" / "two_qubit_exchange.trajectory.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "t,env_energy,beta_star,heat_flux,S_system,mutual_information");
}

TEST_F(Cli, IdentityScenarioReportsZero) {
  const RunResult r = run("simulate --scenario " + scenario("identity.json") + " --out " + dir_.string());
  ASSERT_EQ(r.exit_code, 0) << r.out;
  const nlohmann::json report = nlohmann::json::parse(slurp(dir_ / "identity.report.json"));
  EXPECT_NEAR(report.at("delta_sigma").get<double>(), 0.0, 1e-10);
}

TEST_F(Cli, OutDirFromEnvironment) {
  const RunResult r = run("simulate --scenario " + scenario("identity.json"), "QTHERMO_OUT_DIR=" + dir_.string());
  ASSERT_EQ(r.exit_code, 0) << r.out;
  EXPECT_TRUE(fs::exists(dir_ / "identity.report.json"));
}

TEST_F(Cli, MalformedJsonExitsTwoWithoutOutputs) {
  std::ofstream(dir_ / "bad.json") << "{ \"spec_version\": 1, ";
  const fs::path out = dir_ / "never";
  const RunResult r = run("simulate --scenario " + (dir_ / "bad.json").string() + " --out " + out.string());
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_FALSE(fs::exists(out));
  const nlohmann::json err = nlohmann::json::parse(r.out.substr(r.out.find('{')));
  EXPECT_EQ(err.at("exit_code"), 2);
  EXPECT_TRUE(err.at("error").contains("kind"));
}

TEST_F(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run("simulate").exit_code, 2);
  EXPECT_EQ(run("frobnicate").exit_code, 2);
  EXPECT_EQ(run("simulate --scenario " + (dir_ / "missing.json").string()).exit_code, 2);
}

TEST_F(Cli, NumericalFailureExitsThree) {
  nlohmann::json doc = nlohmann::json::parse(slurp(scenario("two_qubit_exchange.json")));
  doc["policy"] = {{"kind", "energy_matching"}};
  doc["beta_solver"] = {{"max_iter", 1}};
  std::ofstream(dir_ / "hard.json") << doc.dump();
  const RunResult r = run("simulate --scenario " + (dir_ / "hard.json").string() + " --out " + (dir_ / "o").string());
  EXPECT_EQ(r.exit_code, 3) << r.out;
  EXPECT_FALSE(fs::exists(dir_ / "o"));
}

TEST_F(Cli, DeterministicReports) {
  for (const char* run_dir : {"a", "b"}) {
    ASSERT_EQ(run("simulate --scenario " + scenario("random_ramp.json") + " --steps 50 --out " + (dir_ / run_dir).string())
                  .exit_code,
              0);
  }
  EXPECT_EQ(slurp(dir_ / "a" / "random_ramp.report.json"), slurp(dir_ / "b" / "random_ramp.report.json"));
  ASSERT_EQ(run("simulate --scenario " + scenario("random_ramp.json") + " --steps 50 --seed 99 --out " +
                (dir_ / "c").string())
                .exit_code,
            0);
  EXPECT_NE(slurp(dir_ / "a" / "random_ramp.report.json"), slurp(dir_ / "c" / "random_ramp.report.json"));
}

TEST_F(Cli, VerifySmokeAndCorruptedTolerance) {
  const RunResult ok = run("verify --num 1 --out " + dir_.string());
  EXPECT_EQ(ok.exit_code, 0) << ok.out;
  EXPECT_TRUE(fs::exists(dir_ / "verify_summary.json"));
  const RunResult bad = run("verify --num 2 --steps 50 --tolerance 0");
  EXPECT_NE(bad.exit_code, 0);
  EXPECT_NE(bad.out.find("FAIL"), std::string::npos) << bad.out;
}

TEST_F(Cli, ExampleWritesRegionMap) {
  const RunResult r = run("example --grid " + scenario("region_constant.json") + " --out " + dir_.string());
  ASSERT_EQ(r.exit_code, 0) << r.out;
  EXPECT_TRUE(fs::exists(dir_ / "region_constant.region.csv"));
  const nlohmann::json meta = nlohmann::json::parse(slurp(dir_ / "region_constant.region.json"));
  EXPECT_EQ(meta.at("boundary_mismatches"), 0);
}

TEST_F(Cli, ZeroResolutionGridExitsTwo) {
  nlohmann::json doc = nlohmann::json::parse(slurp(scenario("region_constant.json")));
  doc["s"]["steps"] = 0;
  std::ofstream(dir_ / "grid.json") << doc.dump();
  const RunResult r = run("example --grid " + (dir_ / "grid.json").string() + " --out " + (dir_ / "o").string());
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_FALSE(fs::exists(dir_ / "o"));
}

TEST_F(Cli, SweepWritesOneRowPerValue) {
  const RunResult r = run("sweep --scenario " + scenario("two_qubit_exchange.json") +
                          " --param /policy/beta --values 0.5,1,1.5 --steps 50 --out " + dir_.string());
  ASSERT_EQ(r.exit_code, 0) << r.out;
  std::istringstream is(slurp(dir_ / "two_qubit_exchange.sweep.csv"));
  std::string line;
  int lines = 0;
  while (std::getline(is, line)) ++lines;
  EXPECT_EQ(lines, 4);
}

}  // namespace
