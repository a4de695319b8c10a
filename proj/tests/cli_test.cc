#include <gtest/gtest.h>

#include <sstream>

#include "atgen/cli.h"
#include "atgen/io.h"
#include "support/fixtures.h"

namespace atgen {
namespace {

namespace fs = std::filesystem;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun cli(std::vector<std::string> args) {
  args.insert(args.begin(), "atgen");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string bundle(const std::string& name) { return testing::fixture(name).string(); }

class Cli : public ::testing::Test {
 protected:
  void SetUp() override { dir_ = testing::scratch_dir("cli"); }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

TEST_F(Cli, ValidateRunningExample) {
  CliRun r = cli({"validate", testing::running_example().string()});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("ok: 2 feared events", 0), 0u);
}

TEST_F(Cli, ValidateBrokenFixturesExitOne) {
  CliRun r = cli({"validate", bundle("broken_unknown_entity")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("Truck"), std::string::npos);
  r = cli({"validate", bundle("missing_kb")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("file not found"), std::string::npos);
}

TEST_F(Cli, StaleTagIsOnlyAWarning) {
  CliRun r = cli({"validate", bundle("delete_wss")});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.err.find("warning: dangling-reference"), std::string::npos);
}

TEST_F(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(cli({}).code, 2);
  EXPECT_EQ(cli({"frobnicate"}).code, 2);
  EXPECT_EQ(cli({"generate", testing::running_example().string()}).code, 2);
  EXPECT_EQ(cli({"export", "x.json", "--format", "svg"}).code, 2);
  EXPECT_EQ(cli({"serve", testing::running_example().string(), "--addr", "nope"}).code, 2);
  EXPECT_EQ(cli({"--help"}).code, 0);
}

TEST_F(Cli, GenerateWritesThreeFiles) {
  CliRun r = cli({"generate", testing::running_example().string(), "--feared-event",
               "fe1", "--out", dir_.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(dir_ / "fe1.tree.json"));
  EXPECT_TRUE(fs::exists(dir_ / "fe1.dot"));
  EXPECT_TRUE(fs::exists(dir_ / "fe1.report.json"));
  EXPECT_EQ(load_tree(dir_ / "fe1.tree.json").size(), 80u);
  EXPECT_NE(r.out.find("fe1: 80 nodes"), std::string::npos);
}

TEST_F(Cli, GenerateUnknownEventExitsOne) {
  CliRun r = cli({"generate", testing::running_example().string(), "--feared-event",
               "fe9", "--out", dir_.string()});
  EXPECT_EQ(r.code, 1);
}

TEST_F(Cli, GenerateFlagsChangeConfig) {
  CliRun r = cli({"generate", testing::running_example().string(), "--feared-event",
               "fe1", "--no-asset-layer", "--duplicate-subtrees", "--postconditions",
               "--out", dir_.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  AttackDag dag = load_tree(dir_ / "fe1.tree.json");
  EXPECT_EQ(dag.config(), (GenerationConfig{false, false, true}));
}

TEST_F(Cli, RegenAfterRenameReportsOneRelabel) {
  ASSERT_EQ(cli({"generate", testing::running_example().string(), "--feared-event",
                 "fe1", "--out", dir_.string()})
                .code,
            0);
  fs::path next = dir_ / "next";
  CliRun r = cli({"regen", bundle("rename"), "--against",
               (dir_ / "fe1.tree.json").string(), "--out", next.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  RegenReport report =
      report_from_json(read_json_file(next / "fe1.report.json"), "report");
  EXPECT_EQ(report.relabeled,
            std::vector<std::string>{
                "fe1/st-operating/md-engine-running/HW/cmp-brake-pedal"});
  EXPECT_NE(r.out.find("relabeled 1,"), std::string::npos);
}

TEST_F(Cli, RegenMissingTreeExitsOne) {
  CliRun r = cli({"regen", bundle("rename"), "--against", (dir_ / "none.json").string()});
  EXPECT_EQ(r.code, 1);
}

TEST_F(Cli, ExportDotAndText) {
  ASSERT_EQ(cli({"generate", testing::running_example().string(), "--feared-event",
                 "fe1", "--out", dir_.string()})
                .code,
            0);
  const std::string tree = (dir_ / "fe1.tree.json").string();
  CliRun dot = cli({"export", tree});
  EXPECT_EQ(dot.code, 0);
  EXPECT_EQ(dot.out.rfind("digraph \"fe1\"", 0), 0u);
  std::size_t decls = 0;
  std::istringstream in(dot.out);
  for (std::string line; std::getline(in, line);)
    if (line.find(" [label=") != std::string::npos) ++decls;
  EXPECT_EQ(decls, 80u);

  save_overlay(dir_ / "overlay.json", {{"fe1", {Decision::kClosed, "", {}}}});
  CliRun text = cli({"export", tree, "--format", "text", "--overlay",
                  (dir_ / "overlay.json").string()});
  EXPECT_EQ(text.code, 0);
  EXPECT_NE(text.out.find("<closed>"), std::string::npos);
}

}  // namespace
}  // namespace atgen
