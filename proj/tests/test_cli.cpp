#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <json.hpp>

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("s1c_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string config(const std::string& grid, const std::string& seed) {
    const auto path = dir_ / "run.cfg";
    std::ofstream(path) << "[grid]\n" << grid << "\n[seed]\n" << seed << "\n[output]\ndir = " << (dir_ / "out").string() << "\n";
    return path.string();
  }

  int run(const std::string& args) {
    const std::string cmd = std::string(S1C_EXE) + " " + args + " > " + (dir_ / "log.txt").string() + " 2>&1";
    const int st = std::system(cmd.c_str());
    return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  }

  std::string log() {
    std::ifstream in(dir_ / "log.txt");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  json read_json(const std::string& name) {
    std::ifstream in(dir_ / "out" / name);
    return json::parse(in);
  }

  fs::path dir_;
};

const char* kGrid = "K = 16\nN_r = 512\nR_max = 100\ndelta = -0.5";

std::string gaussian_seed(double a) {
  std::ostringstream o;
  o << "udot = gauss amp=" << a << " x0=0.5 y0=0 w=1\nu = gauss amp=" << a << " x0=-0.5 y0=0.25 w=1\n";
  return o.str();
}

}  // namespace

TEST_F(Cli, SolveZeroAmplitude) {
  EXPECT_EQ(run("solve " + config(kGrid, gaussian_seed(0.0))), 0) << log();
  const auto j = read_json("solution.json");
  EXPECT_EQ(j["alpha"].get<double>(), 0.0);
  EXPECT_EQ(j["status"], "Converged");
}

TEST_F(Cli, SolveSmallSeedWritesOutputs) {
  EXPECT_EQ(run("solve " + config(kGrid, gaussian_seed(0.1))), 0) << log();
  const auto j = read_json("solution.json");
  EXPECT_TRUE(j["converged"].get<bool>());
  EXPECT_LE(j["residuals"]["momentum_residual_norm"].get<double>(), 1e-8);
  EXPECT_LE(j["residuals"]["hamiltonian_residual_norm"].get<double>(), 1e-8);
  for (const char* f : {"lambda_tilde.csv", "H_tilde_11.csv", "H_tilde_12.csv", "tau_rescaled.csv"})
    EXPECT_TRUE(fs::exists(dir_ / "out" / f)) << f;
}

TEST_F(Cli, SolveLargeSeedExitsTwo) {
  EXPECT_EQ(run("solve " + config(kGrid, gaussian_seed(10.0))), 2) << log();
  const auto j = read_json("solution.json");
  EXPECT_FALSE(j["converged"].get<bool>());
  EXPECT_TRUE(j.contains("status"));
}

TEST_F(Cli, BadConfigExitsOne) {
  EXPECT_EQ(run("solve " + config("K = 16\nN_r = 512\nR_max = 100\ndelta = 0.5", "")), 1);
  EXPECT_EQ(run("solve " + (dir_ / "missing.cfg").string()), 1);
}

TEST_F(Cli, SweepQuadraticScaling) {
  EXPECT_EQ(run("sweep " + config(kGrid, gaussian_seed(1.0)) + " --amplitudes 0.05,0.1,0.2"), 0) << log();
  std::ifstream in(dir_ / "out" / "sweep.csv");
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line.rfind("a,alpha,p,q,", 0), 0u);
  double lo = 1e300, hi = -1e300;
  int rows = 0;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string c; std::getline(ss, c, ',');) cells.push_back(c);
    ASSERT_EQ(cells.size(), 11u);
    EXPECT_EQ(cells[7], "Converged");
    const double r = std::stod(cells[8]);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
    ++rows;
  }
  EXPECT_EQ(rows, 3);
  EXPECT_LE(hi / lo - 1.0, 0.25);
  const auto fit = read_json("sweep_fit.json");
  EXPECT_TRUE(fit.contains("richardson"));
  EXPECT_TRUE(fit["derived_constants"].contains("literal_convention"));
}

TEST_F(Cli, SweepZeroAmplitudeRow) {
  EXPECT_EQ(run("sweep " + config(kGrid, gaussian_seed(1.0)) + " --amplitudes 0"), 0) << log();
  std::ifstream in(dir_ / "out" / "sweep.csv");
  std::string line;
  std::getline(in, line);
  std::getline(in, line);
  EXPECT_EQ(line.rfind("0,0,0,0,0,0,1,Converged", 0), 0u) << line;
}

TEST_F(Cli, SweepEmptyListExitsOne) {
  EXPECT_EQ(run("sweep " + config(kGrid, gaussian_seed(1.0)) + " --amplitudes ''"), 1);
}

TEST_F(Cli, VerifyDefaultGridPasses) {
  EXPECT_EQ(run("verify " + config(kGrid, "")), 0) << log();
  EXPECT_TRUE(read_json("verify.json")["all_passed"].get<bool>());
}

TEST_F(Cli, VerifyCoarseGridFailsWithNames) {
  EXPECT_EQ(run("verify " + config("K = 16\nN_r = 16\nR_max = 100", "")), 3) << log();
  const auto j = read_json("verify.json");
  int failed = 0;
  for (const auto& c : j["checks"])
    if (!c["passed"].get<bool>()) {
      ++failed;
      EXPECT_FALSE(c["name"].get<std::string>().empty());
    }
  EXPECT_GT(failed, 0);
}

TEST_F(Cli, VerifyNearEndOfDeltaRangeWarns) {
  EXPECT_EQ(run("verify " + config("K = 16\nN_r = 512\nR_max = 100\ndelta = -0.95", "")), 0) << log();
  EXPECT_NE(log().find("warning"), std::string::npos);
  EXPECT_FALSE(read_json("verify.json")["warnings"].empty());
}
