#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "cli.hpp"

namespace odokit {
namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string golden(const std::string& name) {
  std::ifstream in(std::string(ODOKIT_GOLDEN_DIR) + "/" + name);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

TEST(Cli, SupernaturalCommands) {
  EXPECT_EQ(run({"sn", "gcd", "2^inf*3", "2^2*3^inf"}).out, "2^2*3\n");
  EXPECT_EQ(run({"sn", "mul", "1", "2^3"}).out, "2^3\n");
  EXPECT_EQ(run({"sn", "lcm", "2^3", "3;default=inf"}).out, "3;default=inf\n");
  EXPECT_EQ(run({"sn", "leq", "2^2", "2*3^inf"}).out, "false\n");
  EXPECT_EQ(run({"sn", "leq", "2*3", "2*3^inf"}).out, "true\n");
  EXPECT_EQ(run({"sn", "phi0", "360"}).out, "2^3*3^2*5\n");
  EXPECT_EQ(run({"sn", "phi-set", "4", "6", "10"}).out, "2^2*3*5\n");
  EXPECT_EQ(run({"sn", "contains", "2^inf", "6"}).out, "false\n");
  EXPECT_EQ(run({"sn", "sequence", "2^2*3", "4"}).out, "2,12,12,12\n");
  EXPECT_EQ(run({"sn", "sequence", ";default=inf", "2", "--horizon", "3"}).out, "2,36\n");
  EXPECT_EQ(run({"sn", "dominates", "2,4,8", "6,24,48"}).out, "true\n");
  EXPECT_EQ(run({"--json", "sn", "gcd", "2^2*3", "2*3^2"}).out, "{\"value\":\"2*3\"}\n");
}

TEST(Cli, SupernaturalRoundTrip) {
  for (const char* literal : {"1", "2^3*3^inf", ";default=inf", "2^0;default=inf", "7"}) {
    const auto printed = run({"sn", "mul", "1", literal}).out;
    EXPECT_EQ(run({"sn", "mul", "1", printed.substr(0, printed.size() - 1)}).out, printed);
  }
}

TEST(Cli, Ess) {
  EXPECT_EQ(run({"ess", "(0 1 2)(3 4 5 6 7 8)"}).out, "periods 1,3\nphi 3\n");
  EXPECT_EQ(run({"--json", "ess", "(0 1 2)(3 4 5 6 7 8)"}).out, "{\"periods\":[1,3],\"phi\":\"3\"}\n");
  EXPECT_EQ(run({"ess", "(1 2)", "--size", "4"}).out, "periods 1\nphi 1\n");
}

TEST(Cli, OracleAndPartitions) {
  EXPECT_EQ(run({"oracle", "(0 1 2 3)", "2"}).out, "[[0,2],[1,3]]\n[[1,3],[0,2]]\n");
  EXPECT_EQ(run({"--json", "oracle", "(0 1 2 3)", "3"}).out, "{\"count\":0,\"partitions\":[]}\n");
  EXPECT_EQ(run({"part", "validate", "(0 1 2 3 4 5)", "[[0,2,4],[1,3,5]]"}).out, "valid length 2\n");
  EXPECT_EQ(run({"part", "validate", "(0 1 2)", "[[0],[2]]"}).code, 1);
  EXPECT_EQ(run({"part", "shift", "(0 1 2 3)", "[[0,2],[1,3]]", "1"}).out, "[[1,3],[0,2]]\n");
  EXPECT_EQ(run({"part", "coarsen", "(0 1 2 3 4 5)", "[[0],[1],[2],[3],[4],[5]]", "2"}).out,
            "[[0,2,4],[1,3,5]]\n");
  EXPECT_EQ(run({"part", "return", "(0 1 2 3 4 5)", "0", "[0,3]"}).out, "period 3\n[[0,3],[1,4],[2,5]]\n");
  EXPECT_EQ(run({"part", "equivalent", "(0 1 2 3)", "[[0,2],[1,3]]", "[[1,3],[0,2]]"}).out, "true\n");
}

TEST(Cli, Compatibility) {
  EXPECT_EQ(run({"compat", "check", "(0 1)(2 3)", "[[0,2],[1,3]]", "[[0,3],[1,2]]"}).out, "false\n");
  EXPECT_EQ(run({"compat", "make", "(0 1)(2 3)", "[[0,1,2,3]]", "2"}).out, "[[0,2],[1,3]]\n");
  EXPECT_EQ(run({"compat", "lcm", "(0 1 2 3 4 5)", "[[0,2,4],[1,3,5]]", "[[0,3],[1,4],[2,5]]"}).out,
            "[[0],[1],[2],[3],[4],[5]]\n");
  const auto e = run({"--json", "compat", "enumerate", "(0 1)(2 3)", "[[0,1,2,3]]", "2"});
  EXPECT_EQ(e.code, 0);
  EXPECT_NE(e.out.find("\"class_count\":2"), std::string::npos);
}

TEST(Cli, Chains) {
  EXPECT_EQ(run({"chain", "build", "(0 1 2 3)(4 5 6 7)", "2,4"}).out,
            "2 [[0,2,4,6],[1,3,5,7]]\n4 [[0,4],[1,5],[2,6],[3,7]]\n");
  EXPECT_EQ(run({"--json", "chain", "extend", "(0 1 2 3)", "4", "2"}).out,
            "{\"lengths\":[2,4],\"levels\":[[[0,2],[1,3]],[[0],[1],[2],[3]]]}\n");
  EXPECT_EQ(run({"chain", "validate", "(0 1)(2 3)", "[[[0,2],[1,3]],[[0,3],[1,2]]]"}).code, 1);
  EXPECT_EQ(run({"chain", "validate", "(0 1 2 3)", "[[[0,2],[1,3]],[[0],[1],[2],[3]]]"}).out, "valid\n");
  EXPECT_EQ(run({"chain", "build", "(0 1 2 3)", "3"}).code, 1);
}

TEST(Cli, ProjectionReportMatchesGolden) {
  const auto r = run({"--json", "project", "(0 1 2 3 4 5)(6 7 8 9 10 11)"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, golden("project_two_sixes.json"));
  // Byte-stable across runs.
  EXPECT_EQ(run({"--json", "project", "(0 1 2 3 4 5)(6 7 8 9 10 11)"}).out, r.out);
}

TEST(Cli, Factor) {
  EXPECT_EQ(run({"factor", "exists", "(0 1 2 3 4 5 6 7 8 9 10 11)", "2,4"}).out, "true\n");
  EXPECT_EQ(run({"factor", "exists", "(0 1 2 3 4 5 6 7 8 9 10 11)", "5"}).out, "false\n");
  EXPECT_EQ(run({"factor", "compare", "(0 1 2 3 4 5 6 7 8 9 10 11)", "2,4", "2,4,12"}).out,
            "first-factors-through-second\n");
  EXPECT_EQ(run({"factor", "enumerate", "(0 1)(2 3)", "2"}).out, "maps 4\nclasses 2\n");
  EXPECT_EQ(run({"factor", "singletons", "(0 1 2 3 4 5 6 7 8 9 10 11)", "2,4"}).out, "[]\n");
}

TEST(Cli, Odometer) {
  EXPECT_EQ(run({"odo", "add", "2,4", "[1,3]", "[1,1]"}).out, "[0,0]\n");
  EXPECT_EQ(run({"odo", "neg", "2,4,8", "[1,1,5]"}).out, "[1,3,3]\n");
  EXPECT_EQ(run({"odo", "translate", "2,4", "[1,3]"}).out, "[0,0]\n");
  EXPECT_EQ(run({"odo", "metric", "2,4", "[0,0]", "[1,1]"}).out, "1/2\n");
  EXPECT_EQ(run({"odo", "metric", "2,4", "[0,0]", "[0,0]"}).out, "0 (agrees to depth)\n");
  EXPECT_EQ(run({"odo", "cylinder", "2,4,8", "2", "1", "[1,1,5]"}).out, "true\n");
  EXPECT_EQ(run({"odo", "truncate", "2,4,8", "1"}).out, "(0 1)\n");
  EXPECT_EQ(run({"odo", "from-int", "2,4,8", "5"}).out, "[1,1,5]\n");
  EXPECT_EQ(run({"odo", "ess", "2,4,8"}).out, "2^3\n");
  EXPECT_EQ(run({"--json", "odo", "from-int", "2,4,8", "5"}).out, "{\"residues\":[1,1,5]}\n");
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"bogus"}).code, 2);
  EXPECT_EQ(run({"sn", "gcd", "2^x", "3"}).code, 2);
  EXPECT_EQ(run({"sn", "phi0", "0"}).code, 1);
  EXPECT_EQ(run({"ess", "(0 1"}).code, 2);
  EXPECT_EQ(run({"oracle", "(0 1 2 3 4 5 6 7 8 9 10 11 12)", "2"}).code, 1);
  EXPECT_EQ(run({"compat", "make", "(0 1 2)", "[[0,1,2]]", "2"}).code, 1);
  EXPECT_EQ(run({"odo", "add", "2,3", "[0,0]", "[0,0]"}).code, 2);
  EXPECT_EQ(run({"odo", "add", "2,4", "[0,1]", "[0,0]"}).code, 1);
  const auto d = run({"compat", "make", "(0 1 2)", "[[0,1,2]]", "2"});
  EXPECT_NE(d.err.find("2 is not a period"), std::string::npos);
  EXPECT_EQ(run({"--help"}).code, 0);
}

}  // namespace
}  // namespace odokit
