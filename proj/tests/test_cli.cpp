#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "eulertop/cli.hpp"

using namespace eulertop;
using namespace eulertop::cli;

namespace {

std::string sample(const char* name) { return std::string(EULERTOP_SAMPLES_DIR) + "/" + name; }

struct CmdResult {
  int code;
  std::string out, err;
};

template <class Cmd>
CmdResult run(Cmd cmd, const RunConfig& cfg) {
  std::ostringstream out, err;
  const int code = cmd(cfg, out, err);
  return {code, out.str(), err.str()};
}

RunConfig config(const char* spec) {
  RunConfig cfg;
  cfg.spec_path = sample(spec);
  return cfg;
}

}  // namespace

TEST(Cli, AnalyzeExitCodes) {
  EXPECT_EQ(run(cmd_analyze, config("example2.json")).code, kOk);
  EXPECT_EQ(run(cmd_analyze, config("zero_homogeneous.json")).code, kInconclusive);
  EXPECT_EQ(run(cmd_analyze, config("generic_control.json")).code, kInvalidSpec);
  EXPECT_EQ(run(cmd_analyze, config("missing.json")).code, kInvalidSpec);
}

TEST(Cli, AnalyzeCsvListsLevels) {
  RunConfig cfg = config("semisphere.json");
  cfg.format = Format::Csv;
  const CmdResult r = run(cmd_analyze, cfg);
  ASSERT_EQ(r.code, kOk);
  EXPECT_EQ(r.out.rfind("h_star,h_bar,admissible,inside_disk,simple,reason\n", 0), 0u);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 3);
}

TEST(Cli, Overrides) {
  RunConfig cfg = config("semisphere.json");
  cfg.c = 3.0;
  EXPECT_EQ(run(cmd_analyze, cfg).code, kInvalidSpec);
  cfg = config("example2_mu321.json");
  cfg.c = 2.0;
  const CmdResult r = run(cmd_analyze, cfg);
  EXPECT_EQ(r.code, kOk);
  EXPECT_NE(r.out.find("rejected"), std::string::npos);
  cfg.c = -1.0;
  EXPECT_EQ(run(cmd_analyze, cfg).code, kInvalidSpec);
}

TEST(Cli, VerifyWritesOutputs) {
  const auto dir = std::filesystem::temp_directory_path() / "eulertop_cli_test";
  std::filesystem::remove_all(dir);
  RunConfig cfg = config("example2.json");
  cfg.out_dir = dir.string();
  cfg.epsilons = {1e-3, 5e-4};
  const CmdResult r = run(cmd_verify, cfg);
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_TRUE(std::filesystem::exists(dir / "verification.csv"));
  EXPECT_TRUE(std::filesystem::exists(dir / "cycle_0.csv"));
  EXPECT_TRUE(std::filesystem::exists(dir / "cycle_1.csv"));
  std::ifstream in(dir / "cycle_0.csv");
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "t,x1,x2,x3,H,D");
  std::filesystem::remove_all(dir);
}

TEST(Cli, VerifySkipsRejectedRoots) {
  RunConfig cfg = config("example1.json");
  cfg.format = Format::Csv;
  const CmdResult r = run(cmd_verify, cfg);
  EXPECT_EQ(r.code, kOk);
  EXPECT_NE(r.out.find("skipped: ellipse leaves disk"), std::string::npos);
  EXPECT_EQ(run(cmd_verify, config("zero_homogeneous.json")).code, kInconclusive);
}

TEST(Cli, EpsilonList) {
  EXPECT_EQ(parse_epsilon_list("1e-3,5e-4"), (std::vector<double>{1e-3, 5e-4}));
  EXPECT_THROW(parse_epsilon_list("1e-3,abc"), InvalidSpecError);
  EXPECT_THROW(parse_epsilon_list("0"), InvalidSpecError);
  EXPECT_THROW(parse_epsilon_list(""), InvalidSpecError);
}

TEST(Cli, MomentsTable) {
  RunConfig cfg;
  cfg.max_degree = 4;
  cfg.format = Format::Csv;
  const CmdResult r = run(cmd_moments, cfg);
  ASSERT_EQ(r.code, kOk);
  EXPECT_NE(r.out.find("\n0,0,2\n"), std::string::npos);
  EXPECT_NE(r.out.find("\n4,0,3/4\n"), std::string::npos);
  EXPECT_NE(r.out.find("\n2,2,1/4\n"), std::string::npos);
}

TEST(Cli, Examples) {
  for (const auto& name : example_names()) {
    std::ostringstream out, err;
    EXPECT_EQ(cmd_example(name, RunConfig{}, out, err), kOk) << name << ": " << err.str();
  }
  std::ostringstream out, err;
  EXPECT_EQ(cmd_example("nope", RunConfig{}, out, err), kInvalidSpec);
}
