#include <sstream>

#include <gtest/gtest.h>

#include "esf/cli.hpp"

using namespace esf;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream in(s);
  for (std::string line; std::getline(in, line);) v.push_back(line);
  return v;
}

}  // namespace

TEST(Cli, HelpExitsZero) {
  const auto r = run({"--help"});
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_NE(r.out.find("verify"), std::string::npos);
  EXPECT_NE(r.out.find("estimate"), std::string::npos);
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run({}).code, cli::kUsage);
  EXPECT_EQ(run({"bogus"}).code, cli::kUsage);
  EXPECT_EQ(run({"sample", "--n", "5", "--alpha", "1"}).code, cli::kUsage);  // seed missing
  EXPECT_EQ(run({"sample", "--n", "5", "--alpha", "-1", "--seed", "1"}).code, cli::kUsage);
  EXPECT_EQ(run({"sample", "--n", "5", "--seed", "x1"}).code, cli::kUsage);
  EXPECT_EQ(run({"verify", "--n-max", "4", "--alpha", "0.5"}).code, cli::kUsage);
  EXPECT_EQ(run({"verify", "--n-max", "7", "--alpha", "1", "--t", "2"}).code, cli::kUsage);
  EXPECT_EQ(run({"predict", "--n", "10", "--t", "1"}).code, cli::kUsage);
  EXPECT_EQ(run({"density", "--n", "5", "--kind", "primitive"}).code, cli::kUsage);
  EXPECT_EQ(run({"estimate", "--n", "2", "--seed", "1"}).code, cli::kUsage);
  EXPECT_EQ(run({"estimate", "--n", "10", "--seed", "1", "--event", "nope"}).code, cli::kUsage);
  const auto r = run({"sample", "--n", "5"});
  EXPECT_NE(r.err.find("seed"), std::string::npos);
}

TEST(Cli, SampleEchoesSeed) {
  const auto r = run({"sample", "--n", "6", "--alpha", "2", "--count", "3", "--seed", "17"});
  ASSERT_EQ(r.code, cli::kOk);
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 4u);
  EXPECT_NE(ls[0].find("seed=17"), std::string::npos);
  for (std::size_t i = 1; i < ls.size(); ++i) EXPECT_NO_THROW(parse_one_line(ls[i]));

  const auto a = run({"sample", "--n", "6", "--count", "3", "--seed", "auto", "--format", "json"});
  ASSERT_EQ(a.code, cli::kOk);
  const auto j = json::parse(a.out);
  const auto seed = j.at("seed").get<std::uint64_t>();
  const auto again = run({"sample", "--n", "6", "--count", "3", "--seed", std::to_string(seed), "--format", "json"});
  EXPECT_EQ(again.out, a.out);
}

TEST(Cli, SampleCycleNotation) {
  const auto r = run({"sample", "--n", "8", "--alpha", "0", "--seed", "3", "--notation", "cycles"});
  ASSERT_EQ(r.code, cli::kOk);
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 2u);
  EXPECT_EQ(parse_cycles(ls[1], 8).cycle_count(), 1u);
}

TEST(Cli, PredictText) {
  const auto r = run({"predict", "--n", "10000", "--alpha", "100", "--t", "2"});
  ASSERT_EQ(r.code, cli::kOk);
  EXPECT_NE(r.out.find("p_generate   0.3679"), std::string::npos) << r.out;
  const auto j = run({"predict", "--n", "100", "--alpha", "10", "--theta", "0.5", "--p", "1", "--format", "json"});
  ASSERT_EQ(j.code, cli::kOk);
  EXPECT_NEAR(json::parse(j.out).at("limit").get<double>(), std::exp(-1.0), 1e-15);
}

TEST(Cli, VerifyJsonLinesParseBack) {
  const auto r = run({"verify", "--n-max", "4", "--alpha", "1/2,1,2", "--t", "2", "--format", "json"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  const auto ls = lines(r.out);
  ASSERT_FALSE(ls.empty());
  for (const auto& l : ls) {
    const auto report = oracle::report_from_json(json::parse(l));
    EXPECT_TRUE(report.pass);
    EXPECT_EQ(oracle::to_json(report).dump(), l);
  }
}

TEST(Cli, VerifyTextSummary) {
  const auto r = run({"verify", "--n-max", "3", "--alpha", "1,5", "--t", "2,3"});
  ASSERT_EQ(r.code, cli::kOk);
  EXPECT_NE(r.out.find(" 0 failed"), std::string::npos);
}

TEST(Cli, EstimateJsonIsDeterministic) {
  const std::vector<std::string> args{"estimate", "--n", "30", "--alpha", "2", "--t", "2", "--trials", "300",
                                      "--seed", "42", "--event", "all"};
  const auto a = run(args), b = run(args);
  ASSERT_EQ(a.code, cli::kOk);
  EXPECT_EQ(a.out, b.out);
  const auto arr = json::parse(a.out);
  ASSERT_EQ(arr.size(), 3u);
  EXPECT_EQ(arr[0].at("seed").get<std::uint64_t>(), 42u);
  const auto e = mc::estimate_from_json(arr[1]);
  EXPECT_EQ(e.event, "transitive");
  EXPECT_EQ(e.trials, 300u);
}

TEST(Cli, SweepCsvAndJson) {
  const auto c = run({"sweep", "--n", "40,60", "--theta", "0.25,0.75", "--trials", "50", "--seed", "1"});
  ASSERT_EQ(c.code, cli::kOk) << c.err;
  const auto ls = lines(c.out);
  ASSERT_EQ(ls.size(), 5u);
  EXPECT_EQ(ls[0], mc::sweep_csv_header);
  const auto j = run({"sweep", "--n", "40,60", "--theta", "0.25,0.75", "--trials", "50", "--seed", "1", "--format",
                      "json"});
  ASSERT_EQ(j.code, cli::kOk);
  const auto arr = json::parse(j.out);
  ASSERT_EQ(arr.size(), 4u);
  // the CSV and JSON encodings carry the same numbers
  for (std::size_t i = 0; i < 4; ++i)
    EXPECT_NE(ls[i + 1].find("," + std::to_string(arr[i]["estimate"]["successes"].get<std::uint64_t>()) + ","),
              std::string::npos);
}

TEST(Cli, DensityCsv) {
  const auto r = run({"density", "--n", "4", "--alpha", "2", "--kind", "wreath", "--r", "2"});
  ASSERT_EQ(r.code, cli::kOk);
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 2u);
  EXPECT_EQ(ls[0], density_csv_header);
  EXPECT_EQ(ls[1].substr(0, ls[1].rfind(',')), "4,2,2,2,wreath_density,2/5");
  const auto all = run({"density", "--n", "6", "--alpha", "1/2"});
  ASSERT_EQ(all.code, cli::kOk);
  EXPECT_GT(lines(all.out).size(), 10u);
  const auto dec = run({"density", "--n", "6", "--alpha", "0.5", "--kind", "alternating"});
  ASSERT_EQ(dec.code, cli::kOk);
  EXPECT_NE(lines(dec.out)[1].find("alternating_density,,"), std::string::npos);
}

TEST(Cli, StirlingAndPmf) {
  const auto r = run({"stirling", "--n", "4"});
  ASSERT_EQ(r.code, cli::kOk);
  EXPECT_NE(r.out.find("\n4,2,11\n"), std::string::npos);
  const auto p = run({"stirling", "--n", "3", "--alpha", "1"});
  ASSERT_EQ(p.code, cli::kOk);
  const auto ls = lines(p.out);
  ASSERT_EQ(ls.size(), 4u);
  EXPECT_EQ(ls[0], pmf_csv_header);
  EXPECT_EQ(ls[2], "3,1,2,0.5");
}

TEST(Cli, OutputFile) {
  const std::string path = ::testing::TempDir() + "esf_cli_output.json";
  const auto r = run({"predict", "--n", "100", "--alpha", "3", "--format", "json", "--output", path});
  ASSERT_EQ(r.code, cli::kOk);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  const auto j = json::parse(in);
  EXPECT_EQ(j.at("n").get<std::size_t>(), 100u);
}
