#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = utvar::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, CheckExitCodes) {
  EXPECT_EQ(run({"check", "--semiring", "tropical", "--n", "1", "ab = ba"}).code, 0);
  EXPECT_EQ(run({"check", "--n", "2", "xyyxxyxyyx = xyyxyxxyyx"}).code, 0);
  auto nat = run({"check", "-s", "nat", "--n", "2", "xyyxxyxyyx = xyyxyxxyyx"});
  EXPECT_EQ(nat.code, 1);
  EXPECT_NE(nat.out.find("fails"), std::string::npos);
  EXPECT_NE(nat.out.find("witness matrices:"), std::string::npos);
  EXPECT_EQ(run({"check", "-s", "boolean", "xx = xxx"}).code, 0);
  EXPECT_EQ(run({"check", "xy"}).code, 2);
  EXPECT_EQ(run({"check", "--n", "0", "x = y"}).code, 2);
  EXPECT_EQ(run({"check", "-s", "nosuch", "x = y"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
}

TEST(Cli, CheckJson) {
  auto r = run({"check", "-s", "nat", "--json", "xyyxxyxyyx = xyyxyxxyyx"});
  ASSERT_EQ(r.code, 1);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["holds"], false);
  EXPECT_EQ(j["semiring"], "nat");
  EXPECT_EQ(j["n"], 2);
  EXPECT_FALSE(j["witness_assignment"].is_null());
}

TEST(Cli, OracleIsDeterministicAndHonoursTheSeedVariable) {
  std::vector<std::string> args{"check", "--oracle", "--budget", "500", "--seed", "7", "--json", "xyx = yxy"};
  auto a = run(args), b = run(args);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(nlohmann::json::parse(a.out)["seed"], 7);
  ::setenv("UTVAR_SEED", "99", 1);
  auto c = run(args);
  ::unsetenv("UTVAR_SEED");
  EXPECT_EQ(nlohmann::json::parse(c.out)["seed"], 99);
  auto ex = run({"check", "--oracle", "-s", "boolean", "ab = ba"});
  EXPECT_EQ(ex.code, 1);
  EXPECT_NE(ex.out.find("(exhaustive)"), std::string::npos);
}

TEST(Cli, RepresentationGoldenOutputs) {
  EXPECT_EQ(run({"rho", "--n", "3", "--word", "aa", "--lambda"}).out,
            "a_1^2 <1> + a_2^2 <2> + <3> + (a_1 + a_2) <1 -a-> 2> + (a_1 + 1) <1 -a-> 3> + "
            "(a_2 + 1) <2 -a-> 3> + <1 -a-> 2 -a-> 3>\n");
  EXPECT_EQ(run({"rho", "--n", "2", "-w", "aa", "--alpha"}).out, "((a -> a+1), aa)\n");
  EXPECT_EQ(run({"alpha", "-w", "ab", "--alphabet", "a,b"}).out, "((a -> 1, b -> a), ab)\n");
  EXPECT_EQ(run({"alpha", "-w", "aa", "--alphabet", "a,b", "--unicode"}).out, "((a ↦ a+1, b ↦ 0), aa)\n");
  EXPECT_EQ(run({"reduce", "--n", "2", "-w", "a"}).out, "a_1 <1> + <2> + <1 -a-> 2>\n");
  EXPECT_EQ(run({"alpha", "--n", "3", "-w", "a"}).code, 2);
  EXPECT_EQ(run({"rho", "-w", "ac", "--alphabet", "ab"}).code, 2);
  auto j = nlohmann::json::parse(run({"rho", "--n", "2", "-w", "ab", "--json"}).out);
  EXPECT_EQ(j.size(), 4u);
}

TEST(Cli, EnumerateAndAnalyze) {
  auto e = run({"enumerate", "-s", "boolean", "--n", "2", "--rank", "2"});
  EXPECT_EQ(e.code, 0);
  EXPECT_EQ(e.out.substr(0, e.out.find('\n')), "free monoid of rank 2 for UT_2(boolean): 19 elements");
  EXPECT_EQ(run({"enumerate", "-s", "boolean", "--n", "2", "--rank", "2", "--semigroup"}).out.substr(0, 52),
            "free semigroup of rank 2 for UT_2(boolean): 18 eleme");
  EXPECT_EQ(run({"enumerate", "-s", "tropical", "--limit", "20"}).code, 3);

  auto dir = std::filesystem::temp_directory_path() / "utvar_cli_test";
  std::filesystem::create_directories(dir);
  const auto csv = (dir / "t.csv").string(), json = (dir / "t.json").string();
  ASSERT_EQ(run({"enumerate", "-s", "zmod:2", "--n", "1", "--csv", csv, "--out", json}).code, 0);
  std::ifstream in(json);
  EXPECT_EQ(nlohmann::json::parse(in)["size"], 2);
  EXPECT_TRUE(std::filesystem::exists(csv));
  std::filesystem::remove_all(dir);

  EXPECT_EQ(run({"analyze", "-s", "boolean"}).out, "torsion (1,2); locally finite\n");
  auto interval = run({"analyze", "-s", "interval"}).out;
  EXPECT_EQ(interval.substr(0, interval.find('\n')),
            "no torsion identity up to 12; not locally finite for any n ≥ 1");
  EXPECT_NE(interval.find("x = 1/j"), std::string::npos);
  auto j = nlohmann::json::parse(run({"analyze", "-s", "zmod:2", "--n", "3", "--json"}).out);
  EXPECT_EQ(j["torsion"], nlohmann::json::array({1, 2}));
}

TEST(Cli, Bicyclic) {
  EXPECT_EQ(run({"bicyclic", "--verify-embedding", "--bound", "8"}).out, "morphism+injectivity verified\n");
  EXPECT_EQ(run({"bicyclic", "2,1", "3,4"}).out, "(4,4) -> [[0, 8], [-inf, 0]]\n");
  EXPECT_EQ(run({"bicyclic", "2;1"}).code, 2);
}
