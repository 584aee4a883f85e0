#include <gtest/gtest.h>

#include <sstream>

#include "cli.hpp"

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  const int code = bcox::cli::run(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::string sample(const std::string& rel) { return std::string(BCOX_SAMPLES_DIR) + "/" + rel; }

}  // namespace

TEST(Cli, Dims) {
  const auto r = run({"dims", "--algebra", "bmwB", "--n", "2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "12\n");
  const auto table = run({"dims", "--algebra", "heckeB"});
  EXPECT_EQ(table.code, 0);
  EXPECT_NE(table.out.find("heckeB n=4 dim=384 expected=384 PASS"), std::string::npos);
}

TEST(Cli, DimsNeedsAlgebraWithN) {
  EXPECT_EQ(run({"dims", "--n", "2"}).code, 2);
}

TEST(Cli, UnknownFlagsAndCommands) {
  EXPECT_EQ(run({"dims", "--bogus"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"invariance-suite"}).code, 2);  // --seed is required
  EXPECT_EQ(run({"dims", "--algebra", "bmwC"}).code, 2);
}

TEST(Cli, HelpExitsCleanly) {
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, Bratteli) {
  const auto r = run({"bratteli", "2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("(1|1): 2"), std::string::npos);
  EXPECT_NE(r.out.find("(|): 2"), std::string::npos);
  EXPECT_NE(r.out.find("sum of squares 12"), std::string::npos);
}

TEST(Cli, VerifyRe) {
  const auto r = run({"verify", "re"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "PASS\n");
  const auto bad = run({"verify", "re", "--perturb"});
  EXPECT_EQ(bad.code, 1);
  EXPECT_EQ(bad.out.rfind("FAIL", 0), 0u);
  EXPECT_NE(bad.out.find("first difference"), std::string::npos);
}

TEST(Cli, VerifyYbeAndRelations) {
  EXPECT_EQ(run({"verify", "ybe"}).code, 0);
  EXPECT_EQ(run({"verify", "ybe", "--perturb"}).code, 1);
  const auto r = run({"verify", "relations"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("PASS"), std::string::npos);
}

TEST(Cli, InvariantFromStdin) {
  const auto r = run({"invariant", "--route", "jones", "--braid", "-"}, "");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "1\n");
  const auto y = run({"invariant", "--braid", "-"}, "y");
  EXPECT_EQ(y.code, 0);
  EXPECT_EQ(y.out, "(q*q1)/(q - lambda)\n");
}

TEST(Cli, InvariantSpecialized) {
  // q q1/(q - lambda) at q = 2, q1 = 3, lambda = 1/2.
  const auto r = run({"invariant", "--braid", "-", "--set", "q=2", "--set", "q1=3", "--set", "lambda=1/2"}, "y");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "4\n");
  EXPECT_EQ(run({"invariant", "--braid", "-", "--set", "nope=1"}, "y").code, 2);
  EXPECT_EQ(run({"invariant", "--braid", "-", "--set", "q=1/0"}, "y").code, 2);
}

TEST(Cli, InvariantErrors) {
  EXPECT_EQ(run({"invariant", "--braid", "/nonexistent.braid"}).code, 2);
  EXPECT_EQ(run({"invariant", "--braid", "-"}, "1 2 3").code, 2);  // four strands: too many for kauffman
  EXPECT_EQ(run({"invariant", "--braid", "-", "--strands", "2"}, "3").code, 2);
  EXPECT_EQ(run({"invariant", "--route", "jones", "--braid", "-"}, "1 2 3").code, 0);
}

TEST(Cli, InvariantSamples) {
  const auto a = run({"invariant", "--braid", sample("braids/four_term.braid")});
  EXPECT_EQ(a.code, 0);
  const auto b = run({"invariant", "--braid", "-"}, "strands 2\n1 y 1 y\n");
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, Potts) {
  const auto r = run({"potts", "--lattice", sample("lattices/single_site.lattice"), "--states", "3"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "2*w + 1\n");
  const auto c = run({"potts", "--lattice", sample("lattices/grid_2x2.lattice"), "--states", "2", "--crosscheck"});
  EXPECT_EQ(c.code, 0);
  EXPECT_NE(c.out.find("PASS"), std::string::npos);
  const auto tri = run({"potts", "--lattice", sample("lattices/triangle_wall.lattice"), "--states", "2", "--crosscheck"});
  EXPECT_EQ(tri.code, 2);
  EXPECT_EQ(run({"potts", "--lattice", sample("lattices/triangle_wall.lattice"), "--states", "2"}).code, 0);
}

TEST(Cli, TraceSolve) {
  const auto r = run({"trace-solve", "2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("free parameters: s_Y_X1_Y_X1"), std::string::npos);
  EXPECT_NE(r.out.find("tr(1) = 1"), std::string::npos);
  EXPECT_EQ(run({"trace-solve", "4"}).code, 2);
}

TEST(Cli, InvarianceSuite) {
  const auto r = run({"invariance-suite", "--seed", "3", "--trials", "20"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("kauffman_B: 20/20 unchanged"), std::string::npos);
  const auto neg = run({"invariance-suite", "--seed", "3", "--trials", "5", "--negative-control"});
  EXPECT_NE(neg.out.find("kauffman_B: 0/5 unchanged"), std::string::npos);
}
