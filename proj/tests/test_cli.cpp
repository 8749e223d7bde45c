#include "manin/cli.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

using namespace manin;

namespace {

std::string data_path(const std::string& name) { return std::string(MANIN_DATA_DIR) + "/" + name; }

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string pointer_of(const std::string& text) {
  try {
    parse_input_spec(text);
  } catch (const input_error& e) {
    return e.pointer();
  }
  return "<no error>";
}

bool exit_matches_verdict(const CommandResult& r) {
  bool all = true;
  for (const auto& c : r.report.at("clauses")) all = all && c.at("status") == "pass";
  return (r.exit_code == 0) == all && (r.report.at("verdict") == "pass") == all;
}

struct Run {
  int code;
  std::string out;
};

Run run_cli(const std::string& args, const std::string& env = {}) {
  std::string cmd = env + " " + MANIN_CLI_PATH + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, p)) out.append(buf, n);
  int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

const char* kMinimal = R"({"schema_version": 1,
  "algebra": {"labels": ["x", "y"], "form": [["0", "1"], ["1", "0"]]},
  "triple": {"gplus": [["1", "0"]], "gminus": [["0", "1"]]}})";

}  // namespace

TEST(InputSpec, MinimalAbelianParses) {
  InputSpec s = parse_input_spec(std::string(kMinimal));
  EXPECT_EQ(s.algebra, LieAlg::abelian(2, {"x", "y"}));
  EXPECT_EQ(s.form, testutil::M({{0, 1}, {1, 0}}));
  EXPECT_FALSE(s.block_shapes.has_value());
  EXPECT_EQ(parse_input_spec(slurp(data_path("abelian_plane.json"))), s);
}

TEST(InputSpec, GoldenFixtureMatchesBuiltin) {
  InputSpec s = parse_input_spec(slurp(data_path("sl2_gxt.json")));
  EXPECT_EQ(s, input_spec_from_case(standard_triple_gxt(2)));
  FlagCase fc = standard_triple_gxt(2);
  EXPECT_EQ(s.algebra, fc.md->amb().alg);
  EXPECT_EQ(s.form, fc.md->form());
}

TEST(InputSpec, SplittingFixturesMatchBuiltin) {
  FlagCase fc = standard_triple_gxt(2);
  for (Variant v : {Variant::Drinfeld, Variant::Heisenberg}) {
    InputSpec s = parse_input_spec(slurp(data_path(std::string("sl2_gxt_") + to_string(v) + "_splitting.json")));
    ASSERT_TRUE(s.splitting.has_value());
    EXPECT_EQ(*s.splitting, splitting_input_from_case(fc, v));
  }
}

TEST(InputSpec, RoundTripIsIdempotent) {
  for (const char* f : {"abelian_plane.json", "sl2_gxt.json", "sl2_gxt_sections.json",
                        "sl2_gxt_drinfeld_splitting.json", "sl2_gxt_heisenberg_splitting.json"}) {
    const std::string text = slurp(data_path(f));
    InputSpec once = parse_input_spec(text);
    EXPECT_EQ(pretty_json(serialize_input_spec(once)), text) << f;
    EXPECT_EQ(parse_input_spec(serialize_input_spec(once)), once) << f;
  }
}

TEST(InputSpec, ErrorsCarryPointers) {
  EXPECT_EQ(pointer_of(R"({"schema_version":1,"algebra":{"labels":["x"],"form":[["1/0"]]}})"), "/algebra/form/0/0");
  EXPECT_EQ(pointer_of(R"({"schema_version":1,"algebra":{"labels":["x"],"form":[[1.5]]}})"), "/algebra/form/0/0");
  EXPECT_EQ(pointer_of(R"({"schema_version":1,"algebra":{"labels":["x"],"form":[["1"]],"extra":0}})"),
            "/algebra/extra");
  EXPECT_EQ(pointer_of(R"({"schema_version":1,"algebra":{"labels":["x","y"],"form":[["1","0"]]}})"), "/algebra/form");
  EXPECT_EQ(pointer_of(R"({"schema_version":1,"algebra":{"labels":["x"]}})"), "/algebra/form");
  EXPECT_EQ(pointer_of(R"({"schema_version":2})"), "/schema_version");
  EXPECT_EQ(pointer_of(R"({"schema_version":1,"algebra":{"labels":["x","y"],"form":[["0","1"],["1","0"]],
      "brackets":[{"x":0,"y":2,"result":["1","0"]}]}})"), "/algebra/brackets/0/y");
  EXPECT_EQ(pointer_of(R"({"schema_version":1,"algebra":{"labels":["x"],"form":[["1"]]},
      "triple":{"gplus":[["1","0"]],"gminus":[]}})"), "/triple/gplus/0");
  EXPECT_EQ(pointer_of(R"({"schema_version":1,"algebra":{"labels":["x"],"form":[["1"]]},"points":[]})"), "/points");
  EXPECT_EQ(pointer_of("{not json"), "");
}

TEST(InputSpec, LenientModeIgnoresUnknownFields) {
  const std::string text = R"({"schema_version":1,"comment":"hi","algebra":{"labels":["x"],"form":[["1"]]}})";
  EXPECT_THROW(parse_input_spec(text), input_error);
  EXPECT_NO_THROW(parse_input_spec(text, false));
}

TEST(Execute, FlagSuiteGxtSl2Drinfeld) {
  RunOptions opt;
  opt.n = 2;
  opt.variant = Variant::Drinfeld;
  opt.variant_given = true;
  auto r = execute_command("flag-suite", std::nullopt, opt);
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.report.at("verdict"), "pass");
  EXPECT_EQ(r.report.at("schema_version"), 1);
  EXPECT_TRUE(exit_matches_verdict(r));
}

TEST(Execute, ValidatePerturbedTripleFails) {
  InputSpec s = input_spec_from_case(standard_triple_gxt(2));
  s.triple->first[1] = testutil::V({0, 1, 0, 0});
  auto r = execute_command("validate", s, {});
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_TRUE(exit_matches_verdict(r));
  bool witnessed = false;
  for (const auto& c : r.report.at("clauses"))
    if (c.at("status") == "fail" && !c.at("witness").get<std::string>().empty()) witnessed = true;
  EXPECT_TRUE(witnessed);
}

TEST(Execute, BivectorAtTorusIsZeroForDrinfeld) {
  InputSpec s = parse_input_spec(slurp(data_path("sl2_gxt_sections.json")));
  RunOptions opt;
  opt.variant = Variant::Drinfeld;
  opt.variant_given = true;
  auto r = execute_command("bivector-at", s, opt);
  EXPECT_EQ(r.exit_code, 0);
  const json zero = json::array({json::array({"0", "0", "0", "0"}), json::array({"0", "0", "0", "0"}),
                                 json::array({"0", "0", "0", "0"}), json::array({"0", "0", "0", "0"})});
  EXPECT_EQ(r.report.at("data").at("points").at(1).at("drinfeld").at("tensor"), zero);
  EXPECT_NE(r.report.at("data").at("points").at(2).at("drinfeld").at("tensor"), zero);
}

TEST(Execute, FixtureCommandsPass) {
  InputSpec sec = parse_input_spec(slurp(data_path("sl2_gxt_sections.json")));
  for (const char* cmd : {"validate", "rmatrix", "bivector-at", "check-section"}) {
    auto r = execute_command(cmd, sec, {});
    EXPECT_EQ(r.exit_code, 0) << cmd;
    EXPECT_TRUE(exit_matches_verdict(r));
  }
  for (const char* f : {"sl2_gxt_drinfeld_splitting.json", "sl2_gxt_heisenberg_splitting.json"}) {
    auto r = execute_command("check-splitting", parse_input_spec(slurp(data_path(f))), {});
    EXPECT_EQ(r.exit_code, 0) << f;
  }
}

TEST(Execute, SplittingWithoutARepresentativeFails) {
  InputSpec s = parse_input_spec(slurp(data_path("sl2_gxt_drinfeld_splitting.json")));
  s.splitting->reps.pop_back();
  auto r = execute_command("check-splitting", s, {});
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_TRUE(exit_matches_verdict(r));
}

TEST(Execute, MissingSectionsAndUnknownCommand) {
  InputSpec s = parse_input_spec(std::string(kMinimal));
  EXPECT_THROW(execute_command("check-section", s, {}), input_error);
  EXPECT_THROW(execute_command("bivector-at", s, {}), input_error);
  EXPECT_THROW(execute_command("frobnicate", s, {}), std::invalid_argument);
  EXPECT_THROW(execute_command("validate", std::nullopt, {}), std::invalid_argument);
}

TEST(Execute, DeterministicAndParallelInvariant) {
  RunOptions opt;
  opt.n = 3;
  opt.variant = Variant::Heisenberg;
  opt.variant_given = true;
  opt.samples = 2;
  auto a = execute_command("flag-suite", std::nullopt, opt);
  auto b = execute_command("flag-suite", std::nullopt, opt);
  opt.parallel = true;
  auto c = execute_command("flag-suite", std::nullopt, opt);
  EXPECT_EQ(a.report, b.report);
  EXPECT_EQ(a.report, c.report);
}

TEST(Execute, CosetReps) {
  RunOptions opt;
  opt.n = 3;
  opt.simple_roots = {1};
  auto r = execute_command("coset-reps", std::nullopt, opt);
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.report.at("data").at("representatives").size(), 3u);
}

TEST(Binary, ExitCodes) {
  EXPECT_EQ(run_cli("flag-suite --case gxt --n 2 --variant drinfeld").code, 0);
  auto rejected = run_cli("flag-suite --case gxg --n 2 --variant drinfeld");
  EXPECT_EQ(rejected.code, 2);
  EXPECT_NE(rejected.out.find("cannot be applied to the submersion"), std::string::npos);
  EXPECT_EQ(run_cli("validate " + data_path("sl2_gxt.json")).code, 0);
  EXPECT_EQ(run_cli("validate " + data_path("missing.json")).code, 2);
  EXPECT_EQ(run_cli("frobnicate").code, 2);
  EXPECT_EQ(run_cli("coset-reps --n 3 --I 5").code, 2);
}

TEST(Binary, JsonReportAndSeedOverride) {
  const std::string args = "--format json check-section " + data_path("sl2_gxt_sections.json") + " --samples 3";
  auto a = run_cli(args + " --seed 9");
  ASSERT_EQ(a.code, 0) << a.out;
  json report = json::parse(a.out);
  EXPECT_EQ(report.at("command"), "check-section");
  EXPECT_EQ(report.at("data").at("seed"), 9);
  EXPECT_EQ(run_cli(args + " --seed 9").out, a.out);
  auto env = run_cli(args + " --seed 9", "MANIN_SEED=5");
  EXPECT_EQ(json::parse(env.out).at("data").at("seed"), 5);
  EXPECT_EQ(run_cli("coset-reps --n 3", "MANIN_SEED=x").code, 2);
}
