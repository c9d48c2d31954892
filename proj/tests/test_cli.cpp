#include "support.hpp"

#include "ssq/cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace ssq;
using namespace ssq::testing;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& contents = {}) {
  auto p = std::filesystem::temp_directory_path() / ("ssq_cli_test_" + std::to_string(::getpid()) + "_" + name);
  if (!contents.empty()) std::ofstream(p) << contents;
  return p.string();
}

}  // namespace

TEST(Dim, FamilyAndExplicitSpaces) {
  EXPECT_EQ(run({"dim", "--split", "ct", "--r", "1"}).out, "12\n");
  EXPECT_EQ(run({"dim", "--split", "ps", "--rho", "3", "--d", "4"}).out, "18\n");
  EXPECT_EQ(run({"dim", "--split", "ct", "--rho", "5", "--d", "9"}).out, "57\n");
  EXPECT_EQ(run({"dim", "--split", "ct", "--rho", "3", "--d", "3"}).code, cli::kInvalid);
  EXPECT_EQ(run({"dim", "--split", "xx", "--r", "1"}).code, cli::kInvalid);
}

TEST(Verify, ExactSpaceExitsZero) {
  auto r = run({"verify", "--rule", "builtin:hs-cubic", "--split", "ct", "--r", "1"});
  EXPECT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_NE(r.out.find("verdict: exact (12/12 exact)"), std::string::npos) << r.out;
}

TEST(Verify, PowellSabinQuadratic) {
  auto r = run({"verify", "--rule", "builtin:hs-quadratic", "--split", "ps", "--r", "1", "--float"});
  EXPECT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_NE(r.out.find("9/9 exact"), std::string::npos) << r.out;
}

TEST(Verify, LowSmoothnessElementExitsOne) {
  auto r = run({"verify", "--rule", "builtin:hs-quadratic", "--split", "ps", "--element", "ps:(2,0,1,2,0,0)"});
  EXPECT_EQ(r.code, cli::kNotExact);
  EXPECT_NE(r.out.find("-1/36"), std::string::npos) << r.out;
}

TEST(Verify, PolynomialMode) {
  EXPECT_EQ(run({"verify", "--rule", "builtin:hs-cubic", "--poly", "3"}).code, cli::kOk);
  EXPECT_EQ(run({"verify", "--rule", "builtin:hs-cubic", "--poly", "4"}).code, cli::kNotExact);
  EXPECT_EQ(run({"verify", "--rule", "fitted:6:b", "--split", "ct", "--r", "2"}).code, cli::kOk);
}

TEST(Verify, KnotLineNodeNeedsFlag) {
  auto r = run({"verify", "--rule", "builtin:hs-quadratic", "--split", "ct", "--element", "ct:(1,1,0,1)"});
  EXPECT_EQ(r.code, cli::kInvalid);
  EXPECT_FALSE(r.err.empty());
  auto allowed = run({"verify", "--rule", "builtin:hs-quadratic", "--split", "ct", "--element", "ct:(1,1,0,1)",
                      "--allow-knot-line-nodes"});
  EXPECT_EQ(allowed.code, cli::kNotExact);
  EXPECT_NE(allowed.out.find("side convention"), std::string::npos);
}

TEST(Verify, ExitCodeStableAcrossFormats) {
  for (const char* fmt : {"text", "json", "csv"}) {
    EXPECT_EQ(run({"verify", "--rule", "builtin:hs-cubic", "--split", "ct", "--r", "1", "--format", fmt}).code, cli::kOk);
    EXPECT_EQ(run({"verify", "--rule", "builtin:hs-cubic", "--split", "ps", "--element", "ps:(4,0,1,1,0,0)", "--format", fmt})
                  .code,
              cli::kNotExact);
  }
}

TEST(Verify, JsonOutputParses) {
  auto r = run({"verify", "--rule", "builtin:hs-cubic", "--split", "ct", "--r", "1", "--format", "json"});
  auto doc = Json::parse(r.out);
  EXPECT_EQ(doc["verdict"], "exact");
  EXPECT_EQ(doc["count"], 12);
  EXPECT_EQ(doc["records"][0]["rule_value"], "1/20");
}

TEST(Verify, CsvHeader) {
  auto r = run({"verify", "--rule", "builtin:hs-cubic", "--split", "ct", "--r", "1", "--format", "csv"});
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "label,rule_value,true_value,deviation");
}

TEST(Verify, CustomTriangleScalesValues) {
  auto r = run({"verify", "--rule", "builtin:hs-cubic", "--split", "ct", "--r", "1", "--triangle", "0,0,3,1,1,2",
                "--format", "json"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_EQ(Json::parse(r.out)["records"][0]["rule_value"], "1/4");
}

TEST(Counterexamples, ExitZeroWhenReproduced) {
  auto r = run({"counterexamples"});
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_NE(r.out.find("ct:(3,2,0,1)"), std::string::npos);
  EXPECT_EQ(run({"counterexamples", "--float"}).code, cli::kOk);
  EXPECT_EQ(run({"counterexamples", "--format", "json"}).code, cli::kOk);
}

TEST(RuleFile, RoundTripThroughFit) {
  const auto path = temp_file("fit.json");
  auto r = run({"fit-weights", "--template", "b", "--degree", "6", "--output", path});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  auto rule = read_rule_file<Q>(path);
  auto expected = *fitted_rule<Q>(6, 'b').rule;
  ASSERT_EQ(rule.orbits().size(), expected.orbits().size());
  for (std::size_t i = 0; i < rule.orbits().size(); ++i) {
    EXPECT_EQ(rule.orbits()[i].weight, expected.orbits()[i].weight);
    EXPECT_EQ(rule.orbits()[i].theta, expected.orbits()[i].theta);
    EXPECT_EQ(rule.orbits()[i].eta, expected.orbits()[i].eta);
  }
  EXPECT_EQ(run({"verify", "--rule", path, "--split", "ct", "--r", "2"}).code, cli::kOk);
  std::filesystem::remove(path);
}

TEST(RuleFile, SerializeParseIdentity) {
  QuadratureRule<Q> rule(3, {Orbit<Q>{OrbitType::center, 0, 0, q(-9, 16)}, Orbit<Q>{OrbitType::median, q(1, 5), 0, q(25, 48)},
                             Orbit<Q>{OrbitType::general, q(1, 10), q(3, 10), 0}},
                         "demo");
  auto back = rule_from_json<Q>(Json::parse(rule_to_json(rule).dump()));
  EXPECT_EQ(back.name(), "demo");
  EXPECT_EQ(back.degree(), 3);
  ASSERT_EQ(back.orbits().size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(back.orbits()[i].type, rule.orbits()[i].type);
    EXPECT_EQ(back.orbits()[i].theta, rule.orbits()[i].theta);
    EXPECT_EQ(back.orbits()[i].eta, rule.orbits()[i].eta);
    EXPECT_EQ(back.orbits()[i].weight, rule.orbits()[i].weight);
  }
}

TEST(RuleFile, NamedTypesAndDecimals) {
  auto rule = rule_from_json<Q>(
      Json::parse(R"({"degree": 2, "orbits": [{"type": "median", "theta": 0.5, "weight": "1/3"}]})"));
  EXPECT_EQ(rule.orbits()[0].theta, q(1, 2));
  EXPECT_EQ(rule.orbits()[0].type, OrbitType::median);
}

TEST(RuleFile, MalformedFilesRejected) {
  EXPECT_THROW(rule_from_json<Q>(Json::parse(R"({"orbits": []})")), FormatError);
  EXPECT_THROW(rule_from_json<Q>(Json::parse(R"({"degree": 2, "orbits": [{"type": 1, "weight": 1}]})")), FormatError);
  EXPECT_THROW(rule_from_json<Q>(Json::parse(R"({"degree": 2, "orbits": [{"type": 7, "weight": 1}]})")), FormatError);
  const auto bad = temp_file("bad.json", "{not json");
  EXPECT_EQ(run({"verify", "--rule", bad, "--poly", "2"}).code, cli::kInvalid);
  std::filesystem::remove(bad);
  EXPECT_EQ(run({"verify", "--rule", "/nonexistent/rule.json", "--poly", "2"}).code, cli::kInvalid);
}

TEST(FitWeights, PrintsRuleAndHandlesInfeasible) {
  auto r = run({"fit-weights", "--template", "a", "--degree", "4", "--format", "json"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_EQ(Json::parse(r.out)["degree"], 4);
  const auto orbits = temp_file("orbits.json", R"({"degree": 3, "orbits": [{"type": "median", "theta": "1/6", "weight": 0}]})");
  auto bad = run({"fit-weights", "--orbits", orbits, "--degree", "3"});
  EXPECT_EQ(bad.code, cli::kNotExact);
  std::filesystem::remove(orbits);
}

TEST(Nodes, CsvWithHeader) {
  auto r = run({"nodes", "--rule", "builtin:hs-cubic"});
  EXPECT_EQ(r.code, cli::kOk);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "x,y,weight,orbit_type");
  int rows = 0;
  while (std::getline(in, line)) rows += !line.empty();
  EXPECT_EQ(rows, 4);
}

TEST(EvalAndIntegrate, Basic) {
  auto e = run({"eval", "--element", "ct:(1,1,1,1)", "--bary", "1/3,1/3,1/3", "--exact"});
  EXPECT_EQ(e.code, cli::kOk) << e.err;
  EXPECT_EQ(e.out, "1\n");
  auto i = run({"integrate", "--element", "ct:(1,1,1,1)", "--exact"});
  EXPECT_EQ(i.code, cli::kOk) << i.err;
  EXPECT_NE(i.out.find("1/6"), std::string::npos) << i.out;
}

TEST(Basis, ListsAndJumps) {
  auto b = run({"basis", "--split", "ps", "--r", "1"});
  EXPECT_EQ(b.code, cli::kOk);
  EXPECT_NE(b.out.find("ps:(1,1,2,0,1,0)"), std::string::npos) << b.out;
  EXPECT_EQ(run({"basis", "--split", "ct", "--r", "1", "--jumps"}).code, cli::kOk);
}

TEST(Usage, ErrorsExitTwo) {
  EXPECT_EQ(run({"verify", "--bogus"}).code, cli::kInvalid);
  EXPECT_EQ(run({"frobnicate"}).code, cli::kInvalid);
  EXPECT_EQ(run({"verify", "--rule", "builtin:nope", "--poly", "2"}).code, cli::kInvalid);
  EXPECT_EQ(run({"verify", "--rule", "builtin:hs-cubic", "--split", "ct", "--r", "1", "--format", "xml"}).code,
            cli::kInvalid);
  EXPECT_EQ(run({"verify", "--rule", "builtin:hs-cubic", "--split", "ct", "--element", "ct:(1,1)"}).code, cli::kInvalid);
  EXPECT_EQ(run({"verify", "--rule", "builtin:hs-cubic", "--poly", "3", "--triangle", "0,0,1,1,2,2"}).code, cli::kInvalid);
  auto h = run({"--help"});
  EXPECT_EQ(h.code, cli::kOk);
  EXPECT_NE(h.out.find("verify"), std::string::npos);
}
