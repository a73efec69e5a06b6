#include <sstream>

#include <gtest/gtest.h>

#include "cli.hpp"

namespace obsel::cli {
namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

TEST(Cli, RunCatalogEntry) {
  const auto r = run({"run", "sleeping_beauty", "--rule=fnc"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(contains(r.out, "P(Heads) = 1/3")) << r.out;
  EXPECT_TRUE(contains(r.out, "odds ledger:")) << r.out;
}

TEST(Cli, RunWithParamsAndCsv) {
  const auto r = run({"run", "doomsday", "--param", "prior_large=1/2", "--format", "csv"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(r.out.starts_with("kind,stage,name,value,decimal\n")) << r.out;
  EXPECT_TRUE(contains(r.out, "1/1001")) << r.out;
}

TEST(Cli, RunScenarioFile) {
  const auto r = run({"run", OBSEL_SCENARIO_DIR "/doomsday.scn"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(contains(r.out, "rule=ssa")) << r.out;
  EXPECT_TRUE(contains(r.out, "P(doom-late) = 1/1001")) << r.out;

  const auto sia = run({"run", OBSEL_SCENARIO_DIR "/doomsday.scn", "--rule", "ssa+sia"});
  EXPECT_EQ(sia.code, kExitOk) << sia.err;
  EXPECT_TRUE(contains(sia.out, "P(doom-late) = 1/2")) << sia.out;

  const auto beauty = run({"run", OBSEL_SCENARIO_DIR "/sleeping_beauty.scn", "--fnc-limit"});
  EXPECT_EQ(beauty.code, kExitOk) << beauty.err;
  EXPECT_TRUE(contains(beauty.out, "P(Heads) = 1/3")) << beauty.out;
}

TEST(Cli, InputErrorsExitTwo) {
  for (const std::vector<std::string>& args :
       std::vector<std::vector<std::string>>{{"run", "no_such_entry"},
                                             {"run", "sleeping_beauty", "--rule", "bayes"},
                                             {"run", "sleeping_beauty", "--param", "colour=red"},
                                             {"run", "/nonexistent/file.scn"},
                                             {"fermi", "--V", "-1"},
                                             {"table", "other"},
                                             {"frobnicate"},
                                             {}}) {
    const auto r = run(args);
    EXPECT_EQ(r.code, kExitInput) << (args.empty() ? "" : args[0]) << ": " << r.err;
    EXPECT_FALSE(r.err.empty());
  }
}

TEST(Cli, HelpExitsZero) {
  const auto r = run({"--help"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_TRUE(contains(r.out + r.err, "fermi"));
}

TEST(Cli, ListAndCheck) {
  const auto list = run({"list"});
  EXPECT_EQ(list.code, kExitOk);
  EXPECT_TRUE(contains(list.out, "marochnik"));
  const auto check = run({"check"});
  EXPECT_EQ(check.code, kExitOk) << check.out;
  EXPECT_TRUE(contains(check.out, "checks passed"));
  EXPECT_FALSE(contains(check.out, "FAIL"));
}

TEST(Cli, FermiIsReproducible) {
  const std::vector<std::string> args{"fermi", "--V", "1", "--samples", "2000", "--seed", "11"};
  const auto a = run(args);
  const auto b = run(args);
  auto threaded = args;
  threaded.insert(threaded.end(), {"--threads", "3"});
  const auto c = run(threaded);
  EXPECT_EQ(a.code, kExitOk) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out, c.out);
  EXPECT_NE(a.out, run({"fermi", "--V", "1", "--samples", "2000", "--seed", "12"}).out);
}

TEST(Cli, FermiClosedFormAtZeroV) {
  const auto r = run({"fermi", "--V", "0", "--samples", "1000"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(contains(r.out, "0.1236")) << r.out;
}

TEST(Cli, MarochnikTable) {
  const auto r = run({"table", "marochnik", "--regime", "few"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(contains(r.out, "1/f")) << r.out;
  const auto csv = run({"table", "marochnik", "--format", "csv"});
  EXPECT_TRUE(csv.out.starts_with("regime,class,rule,observer,stage,symbol,value\n"));
}

}  // namespace
}  // namespace obsel::cli
