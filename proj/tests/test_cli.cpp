#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "hhbv/presentations.hpp"

namespace {

struct Invocation {
  int status;
  std::string out, err;
};

Invocation run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int status = hhbv::cli::run(args, out, err);
  return {status, out.str(), err.str()};
}

nlohmann::json run_json(std::vector<std::string> args, int expected_status = 0) {
  args.push_back("--format");
  args.push_back("json");
  const Invocation r = run(args);
  EXPECT_EQ(r.status, expected_status) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["schema"], "hhbv/1");
  return j;
}

TEST(Cli, PresentCyclicCharTwo) {
  const auto j = run_json({"present", "-g", "Z/6", "-r", "F_2"});
  EXPECT_EQ(j["family"], "cyclic-char-p");
  const auto& rel = j["relations"];
  EXPECT_NE(std::find(rel.begin(), rel.end(), "y^2 - x^4*z"), rel.end()) << rel.dump();
  EXPECT_EQ(j["degree_bound"], "6");
}

TEST(Cli, DeltaOnTensorIntegral) {
  const auto j = run_json({"delta", "-g", "Z/4 x Z/2", "-r", "Z", "-m", "c"});
  // c and b carry 2-torsion, so -x^3*b is printed by its canonical residue
  const auto pres = hhbv::present_fg_abelian(hhbv::GroupDescriptor::parse("Z/4 x Z/2"), {});
  EXPECT_EQ(j["result"], pres.to_string(pres.parse("-x^3*b")));
  EXPECT_EQ(j["result"], "x^3*b");
  EXPECT_EQ(j["agreement"], true);
}

TEST(Cli, DeltaRunsBarRouteOnCyclicGroups) {
  const auto j = run_json({"delta", "-g", "Z/3", "-r", "F_3", "-m", "z*y*x^2"});
  ASSERT_EQ(j["checks"].size(), 2u);
  EXPECT_EQ(j["checks"][1]["route"], "bar transfer");
  EXPECT_EQ(j["agreement"], true);
}

TEST(Cli, BracketReportsEveryRoute) {
  // in characteristic 2 the circle product and the D-route agree
  const auto j = run_json({"bracket", "-g", "Z/2", "-r", "F_2", "-m", "x", "-m", "y"});
  EXPECT_EQ(j["checks"].size(), 3u);
  EXPECT_EQ(j["agreement"], true);
  EXPECT_EQ(j["result"], "1");
}

TEST(Cli, BracketSignDisagreementExitsNonZero) {
  const auto j = run_json({"bracket", "-g", "Z/3", "-r", "F_3", "-m", "x", "-m", "y"}, 1);
  EXPECT_EQ(j["agreement"], false);
  EXPECT_NE(j["checks"][2]["value"].get<std::string>().find("negative"), std::string::npos);
}

TEST(Cli, VerifyBvkzPasses) {
  const Invocation r = run({"verify", "-g", "Z", "-r", "Z", "--suite", "bvkz"});
  EXPECT_EQ(r.status, 0) << r.out << r.err;
  EXPECT_NE(r.out.find("PASS"), std::string::npos);
}

TEST(Cli, HomologyOfCyclicGroup) {
  const auto j = run_json({"homology", "-g", "Z/4", "-r", "Z", "-d", "3"});
  ASSERT_EQ(j["degrees"].size(), 4u);
  EXPECT_EQ(j["degrees"][0]["free_rank"], "4");
  EXPECT_EQ(j["degrees"][1]["module"], "0");
  EXPECT_EQ(j["degrees"][2]["torsion"], nlohmann::json({"4", "4", "4", "4"}));
}

TEST(Cli, HomologyOfFreeGroup) {
  const auto j = run_json({"homology", "-g", "Z^2", "-r", "Q", "-d", "3"});
  EXPECT_EQ(j["degrees"][1]["module"], "R[G]^2");
  EXPECT_EQ(j["degrees"][3]["module"], "0");
}

TEST(Cli, CompareOnTensorGroup) {
  const auto j = run_json({"compare", "-g", "Z/2 x Z/2", "-r", "F_2", "-d", "2"});
  EXPECT_EQ(j["matrix"][0]["cells"][1], "n/a");
  EXPECT_EQ(j["agreement"], true);
}

TEST(Cli, CompareOnCyclicGroupInCharTwo) {
  const auto j = run_json({"compare", "-g", "Z/4", "-r", "F_2", "-d", "3"});
  EXPECT_EQ(j["agreement"], true) << j.dump(1);
}

TEST(Cli, OutputIsDeterministic) {
  const std::vector<std::string> args{"present", "-g", "Z/4 x Z/2", "-r", "Z", "--format", "json"};
  EXPECT_EQ(run(args).out, run(args).out);
  const std::vector<std::string> verify{"verify", "-g", "Z/3", "-r", "F_3", "--suite", "charp-bv", "--format", "json", "--jobs", "3"};
  EXPECT_EQ(run(verify).out, run(verify).out);
}

TEST(Cli, ParseErrorsCarryPosition) {
  const Invocation r = run({"delta", "-g", "Z/4", "-r", "F_2", "-m", "x*q"});
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.err.find("'x*q' at 2"), std::string::npos) << r.err;
}

TEST(Cli, HypothesisErrorsPropagate) {
  const Invocation r = run({"present", "-g", "Z/4", "-r", "Z/6"});
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.err.find("error:"), std::string::npos);
}

TEST(Cli, DegreeBoundIsChecked) {
  EXPECT_EQ(run({"present", "-g", "Z/2", "-d", "9"}).status, 2);
  EXPECT_EQ(run({"present", "-g", "Z/2", "-d", "0"}).status, 2);
}

TEST(Cli, DegreeCapEnvironmentSetsDefault) {
  ::setenv("HHBV_DEGREE_CAP", "2", 1);
  const auto j = run_json({"present", "-g", "Z/2", "-r", "F_2"});
  ::unsetenv("HHBV_DEGREE_CAP");
  EXPECT_EQ(j["degree_bound"], "2");
}

}  // namespace
