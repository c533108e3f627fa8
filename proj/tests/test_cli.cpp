#include <gtest/gtest.h>

#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace infodim::cli {
namespace {

struct CliRun {
  int code = -1;
  std::string out;
  std::string err;
  json report() const { return json::parse(out); }
};

CliRun run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  CliRun r;
  r.code = run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string sample(const char* name) { return std::string(INFODIM_SAMPLES_DIR) + "/" + name; }

const char* kZhangYeung = "2 I(z;w) <= I(x;y) + I(x;z,w) + 3 I(z;w|x) + I(z;w|y)";

TEST(Cli, CheckShannonType) {
  const CliRun r = run_cli({"check", "H(x) <= H(x,y)"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = r.report();
  EXPECT_EQ(j["outcome"], "shannon-type");
  ASSERT_EQ(j["certificate"].size(), 1u);
  EXPECT_EQ(j["certificate"][0]["label"], "H(2|1)");
  EXPECT_EQ(j["certificate"][0]["weight"], "1");
  EXPECT_TRUE(j.contains("elapsed_ms"));
}

TEST(Cli, CheckZhangYeung) {
  const CliRun r = run_cli({"check", kZhangYeung, "--vars", "x,y,z,w"});
  ASSERT_EQ(r.code, 2) << r.err;
  const json j = r.report();
  EXPECT_EQ(j["outcome"], "not-shannon-type");
  EXPECT_EQ(j["farkas_witness"]["point"].size(), 15u);
  EXPECT_EQ(j["farkas_witness"]["elemental_rows_checked"], 28);
  EXPECT_EQ(j["farkas_witness"]["target_slack"].get<std::string>().front(), '-');
}

TEST(Cli, EvalExactAndFloat) {
  const CliRun exact = run_cli({"eval", "--ineq", "2 H(x,y,z) <= H(x,y)+H(x,z)+H(y,z)", "--dist", sample("parity.json")});
  ASSERT_EQ(exact.code, 0) << exact.err;
  EXPECT_EQ(exact.report()["mode"], "exact");
  EXPECT_EQ(exact.report()["slack"]["exact"], "2");

  const CliRun flt = run_cli({"eval", "--ineq", "H(x,y) <= H(x)", "--dist", sample("biased_coin.json")});
  ASSERT_EQ(flt.code, 2) << flt.err;
  EXPECT_EQ(flt.report()["outcome"], "violated");
  EXPECT_NEAR(flt.report()["slack"]["float"].get<double>(), -2.0 / 3, 1e-9);
}

TEST(Cli, EvalDimensionMismatch) {
  const CliRun r = run_cli({"eval", "--ineq", "H(x) >= 0", "--dist", sample("parity.json")});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.err.rfind("error: dimension-mismatch: ", 0), 0u) << r.err;
  EXPECT_TRUE(r.out.empty());
}

TEST(Cli, GroupSearchKleinFile) {
  const CliRun r = run_cli({"group-search", "--ineq", "H(x,y) <= H(x)", "--groups", sample("klein.json")});
  ASSERT_EQ(r.code, 2) << r.err;
  const json v = r.report()["violation"];
  EXPECT_EQ(v["group"], "Z2xZ2");
  EXPECT_EQ(v["subgroups"], json::parse("[[0,1],[0]]"));
  EXPECT_EQ(v["slack"]["exact"], "-1");
}

TEST(Cli, GroupSearchNone) {
  const CliRun r = run_cli({"group-search", "--ineq", "H(x) + H(y) >= H(x,y)", "--max-order", "8"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.report()["outcome"], "none within catalog");
}

TEST(Cli, CounterexampleFromFiles) {
  const CliRun r = run_cli({"counterexample", "--ineq", "H(x,y) <= H(x)", "--group", sample("klein.json"), "--subgroups",
                         sample("klein_subgroups.json")});
  ASSERT_EQ(r.code, 2) << r.err;
  const json c = r.report()["counterexample"];
  EXPECT_EQ(c["N"], 4);
  EXPECT_EQ(c["epsilon"], "1/4");
  EXPECT_EQ(c["levels"][0]["level"]["exact"], "log2(4)/log2(4) - 1/4");
  EXPECT_EQ(c["entropy_slack"]["exact"], "-1");
  EXPECT_EQ(c["level_margin_times_log2N"]["exact"], "1/2");
}

TEST(Cli, CounterexampleSearchesWhenNoGroupGiven) {
  const CliRun r = run_cli({"counterexample", "--ineq", "H(x,y) <= H(x)", "--max-order", "4"});
  ASSERT_EQ(r.code, 2) << r.err;
  EXPECT_EQ(r.report()["violation"]["group"], "Z2");
}

TEST(Cli, CounterexampleNotViolated) {
  const CliRun r = run_cli({"counterexample", "--ineq", "H(x) <= H(x,y)", "--group", sample("klein.json"), "--subgroups",
                         sample("klein_subgroups.json")});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.err.rfind("error: not-violated: ", 0), 0u) << r.err;
}

TEST(Cli, Cantor) {
  const CliRun all = run_cli({"cantor", "--witness", sample("witness.json")});
  ASSERT_EQ(all.code, 0) << all.err;
  EXPECT_EQ(all.report()["projections"].size(), 3u);
  const CliRun one = run_cli({"cantor", "--witness", sample("witness.json"), "--project", "2"});
  ASSERT_EQ(one.code, 0) << one.err;
  const json p = one.report()["projections"];
  ASSERT_EQ(p.size(), 1u);
  EXPECT_EQ(p[0]["dimension"]["exact"], "log2(1)/log2(4)");
  EXPECT_EQ(p[0]["fiber_size"], 4);
}

TEST(Cli, SplitExhaustiveAndGreedy) {
  const CliRun r = run_cli({"split", "--body", sample("body.json"), "--spec", sample("split_spec.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.report()["outcome"], "split-found");
  EXPECT_EQ(r.report()["assignment"].size(), 6u);
  const CliRun g = run_cli({"split", "--body", sample("body.json"), "--spec", sample("split_spec.json"), "--greedy"});
  EXPECT_EQ(g.code, 0) << g.err;
  const CliRun both = run_cli(
      {"split", "--body", sample("body.json"), "--spec", sample("split_spec.json"), "--greedy", "--exhaustive"});
  EXPECT_EQ(both.code, 1);
}

TEST(Cli, DemoCubeBar) {
  const CliRun r = run_cli({"demo", "cube-bar", "--k", "16"});
  ASSERT_EQ(r.code, 2) << r.err;
  EXPECT_NE(r.out.find("265216 > 92416"), std::string::npos);
  EXPECT_NE(r.out.find("unsplit inequality VIOLATED"), std::string::npos);
  const CliRun bad = run_cli({"demo", "cube-bar", "--k", "10"});
  EXPECT_EQ(bad.code, 1);
  EXPECT_EQ(bad.err.rfind("error: invalid-argument: ", 0), 0u) << bad.err;
}

TEST(Cli, ErrorsAreSingleLine) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"check", "H(x) <="}, {"nonsense"}, {}, {"eval", "--ineq", "H(x) >= 0", "--dist", "/no/such/file"}}) {
    const CliRun r = run_cli(args);
    EXPECT_EQ(r.code, 1);
    EXPECT_EQ(r.err.rfind("error: ", 0), 0u) << r.err;
    EXPECT_EQ(r.err.find('\n'), r.err.size() - 1) << r.err;
  }
}

TEST(Cli, HelpDocumentsGrammar) {
  const CliRun r = run_cli({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("I(vars;vars|vars)"), std::string::npos);
}

TEST(Cli, ReportsAreDeterministic) {
  const std::vector<std::vector<std::string>> cases{
      {"check", kZhangYeung},
      {"counterexample", "--ineq", "H(x,y) <= H(x)", "--max-order", "4"},
      {"split", "--body", sample("body.json"), "--spec", sample("split_spec.json")}};
  for (const auto& args : cases) {
    json a = run_cli(args).report();
    json b = run_cli(args).report();
    a.erase("elapsed_ms");
    b.erase("elapsed_ms");
    EXPECT_EQ(a.dump(), b.dump());
  }
}

}  // namespace
}  // namespace infodim::cli
