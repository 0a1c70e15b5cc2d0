#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "toda/cli.hpp"

using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "toda");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = toda::cli::dispatch(int(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, VerifyQismPasses) {
  const auto r = run({"verify", "qism", "--n", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["suite"], "qism");
  EXPECT_EQ(j["n"], 3);
  EXPECT_EQ(j["status"], "PASS");
  EXPECT_TRUE(j["first_failure"].is_null());
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({"verify", "qism", "--n", "3", "--bogus"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"whittaker", "eval", "--n", "2", "--alpha", "1", "--x", "0,0"}).code, 2);
  EXPECT_EQ(run({"whittaker", "eval", "--n", "2", "--alpha", "1,0", "--x", "0,0", "--format", "xml"}).code, 2);
  EXPECT_EQ(run({"cfunction", "--n", "3", "--lambda", "1,2,3", "--weyl", "1,1,2"}).code, 2);
  EXPECT_EQ(run({"verify", "eigen", "--n", "2", "--alpha", "1,0", "--grid", "0:0.1"}).code, 2);
  const auto h = run({"--help"});
  EXPECT_EQ(h.code, 0);
  EXPECT_NE(h.out.find("whittaker"), std::string::npos);
}

TEST(Cli, EvaluationErrorsExitOne) {
  EXPECT_EQ(run({"whittaker", "eval", "--n", "4", "--alpha", "0,0,0,0", "--x", "0,0,0,0"}).code, 1);
  EXPECT_EQ(run({"spherical", "eval", "--n", "2", "--lambda", "1,1", "--x", "0,0"}).code, 1);
  EXPECT_EQ(run({"verify", "hc", "--n", "2"}).code, 1);  // normalizer constancy fails
}

TEST(Cli, PlaneWave) {
  const auto r = run({"whittaker", "eval", "--n", "1", "--alpha", "1", "--x", "0"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = toda::parse_csv(r.out);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_NEAR(rows[0].value.real(), 1.0, 1e-15);
  EXPECT_NEAR(rows[0].value.imag(), 0.0, 1e-15);
  const auto j = json::parse(run({"whittaker", "eval", "--n", "1", "--alpha", "1", "--x", "0", "--format", "json"}).out);
  EXPECT_FALSE(j.empty());
}

TEST(Cli, NegativeListValues) {
  const auto a = run({"whittaker", "eval", "--n", "2", "--alpha", "-0.5,0.5", "--x", "-0.3,0.3", "--tol", "1e-9"});
  const auto b = run({"whittaker", "eval", "--n", "2", "--alpha=-0.5,0.5", "--x=-0.3,0.3", "--tol", "1e-9"});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  const auto rows = toda::parse_csv(a.out);
  const auto direct = toda::whittaker_eval(2, {-0.5, 0.5}, {-0.3, 0.3}, 1e-9);
  EXPECT_EQ(rows[0].value, direct.value);
}

TEST(Cli, DeterministicJson) {
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"verify", "separation", "--n", "3", "--trials", "5"},
        std::vector<std::string>{"verify", "gz", "--n", "3", "--trials", "3", "--seed", "7"},
        std::vector<std::string>{"verify", "hc", "--n", "3", "--trials", "4"},
        std::vector<std::string>{"cfunction", "--n", "3", "--lambda", "0.3,-0.2,0.5", "--lambda-imag", "1,0,-1"}}) {
    const auto a = run(args), b = run(args);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.code, b.code);
    EXPECT_TRUE(json::accept(a.out));
  }
}

TEST(Cli, CfunctionFields) {
  const auto r = run({"cfunction", "--n", "2", "--lambda", "0,0", "--lambda-imag", "1,-1", "--weyl", "2,1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  for (const char* k : {"c_s", "c", "M", "S", "S0", "b"}) {
    ASSERT_TRUE(j.contains(k)) << k;
    EXPECT_TRUE(j[k].contains("re") && j[k].contains("im"));
  }
  // N = 2, s = w0: c_s equals c
  EXPECT_DOUBLE_EQ(j["c_s"]["re"].get<double>(), j["c"]["re"].get<double>());
  EXPECT_GT(j["plancherel"].get<double>(), 0.0);
}

TEST(Cli, GridCsvRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "toda_cli_grid.csv";
  const auto r = run({"whittaker", "grid", "--n", "2", "--alpha", "1,-1", "--axis", "1", "--from", "-1", "--to", "1",
                      "--steps", "4", "--out", path.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  const auto rows = toda::parse_csv(buf.str());
  ASSERT_EQ(rows.size(), 5u);
  std::ostringstream again;
  toda::write_csv(again, rows);
  EXPECT_EQ(again.str(), buf.str());
  std::filesystem::remove(path);

  const auto s = run({"spherical", "grid", "--n", "2", "--lambda", "1,-1", "--steps", "2", "--format", "json"});
  ASSERT_EQ(s.code, 0) << s.err;
  EXPECT_EQ(json::parse(s.out).size(), 3u);
}

TEST(Cli, EigenVerify) {
  const auto r = run({"verify", "eigen", "--n", "2", "--alpha", "0.7,-0.3", "--grid", "0.5:0.05:24,-0.5:0.05:24",
                      "--refine"});
  ASSERT_EQ(r.code, 0) << r.out << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["results"].size(), 2u);
  EXPECT_EQ(j["results"][0]["tolerance"].get<double>(), 1e-3);
}

TEST(Cli, SchemaAndReports) {
  const auto sch = json::parse(run({"schema"}).out);
  const auto keys = sch["$defs"]["record"]["required"];
  for (const char* k : {"suite", "n", "relation", "status", "residual", "tolerance", "seed", "witness"})
    EXPECT_NE(std::find(keys.begin(), keys.end(), k), keys.end()) << k;

  toda::VerificationReport empty;
  empty.suite = "x";
  auto j = json::parse(empty.to_json());
  EXPECT_EQ(j["status"], "PASS");
  EXPECT_TRUE(j["seed"].is_null());

  toda::VerificationReport pass = empty;
  pass.seed = 42;
  pass.add("r", true, 0.0, 1.0);
  j = json::parse(pass.to_json());
  EXPECT_EQ(j["results"][0]["seed"], 42);
  EXPECT_TRUE(j["results"][0]["witness"].is_null());

  toda::VerificationReport fail = pass;
  fail.add("q", false, 2.0, 1.0, "w");
  j = json::parse(fail.to_json());
  EXPECT_EQ(j["status"], "FAIL");
  EXPECT_EQ(j["first_failure"]["relation"], "q");
  EXPECT_EQ(j["first_failure"]["witness"], "w");
  for (const auto& rec : j["results"])
    for (const char* k : {"suite", "n", "relation", "status", "residual", "tolerance", "seed", "witness"})
      EXPECT_TRUE(rec.contains(k));
}
