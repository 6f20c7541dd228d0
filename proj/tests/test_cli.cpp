#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "torbase/cli.hpp"
#include "torbase/serialize.hpp"

namespace torbase {
namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

Json invoke_json(const std::vector<std::string>& args) {
  const auto r = invoke(args);
  EXPECT_EQ(r.code, 0) << r.err;
  return Json::parse(r.out);
}

TEST(Cli, GraverOfFourFiveSix) {
  const auto j = invoke_json({"bases", "4", "5", "6", "--kind", "graver", "--json"});
  EXPECT_EQ(j.at("kind"), "graver");
  EXPECT_EQ(j.at("elements").size(), 7u);
}

TEST(Cli, ClassifyFamilies) {
  const auto j = invoke_json({"--json", "classify", "390", "546", "770", "1155", "--families"});
  EXPECT_EQ(j.at("universally_free"), true);
  EXPECT_EQ(j.at("families").at("F0"), false);
  EXPECT_EQ(j.at("families").at("F1"), true);
  EXPECT_EQ(j.at("families").at("F2"), true);
  EXPECT_EQ(report_from_json(j).gens, (std::vector<Int>{390, 546, 770, 1155}));
}

TEST(Cli, TrivialSemigroupHasEmptyBases) {
  const auto r = invoke({"bases", "1", "--kind", "all"});
  EXPECT_EQ(r.code, 0) << r.err;
  const auto j = invoke_json({"bases", "1", "--kind", "all", "--json"});
  ASSERT_EQ(j.size(), 6u);
  for (const auto& [kind, basis] : j.items()) EXPECT_TRUE(basis.at("elements").empty()) << kind;
}

TEST(Cli, NormalizationIsReportedOnStderr) {
  const auto r = invoke({"betti", "6", "4", "9", "8"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.err.find("<4,6,9>"), std::string::npos);
  EXPECT_EQ(r.out, "Betti(<4,6,9>) = {12, 18}\n");
  const auto j = invoke_json({"betti", "4", "6", "9", "--json"});
  EXPECT_EQ(j.at("betti"), Json::parse("[12,18]"));
}

TEST(Cli, GroebnerModes) {
  const auto sizes = invoke_json({"groebner", "10", "15", "18", "--sizes", "--json"});
  EXPECT_EQ(sizes.at("sizes"), Json::parse("[2,2,2,2]"));
  const auto fan = invoke_json({"groebner", "10", "15", "18", "--fan", "--json"});
  EXPECT_EQ(fan.size(), 4u);
  const auto one = invoke_json({"groebner", "4", "5", "6", "--order", "1,1,1:3,2,1", "--json"});
  EXPECT_EQ(one.at("order").at("tiebreak"), Json::parse("[2,1,0]"));
  EXPECT_FALSE(one.at("elements").empty());
  EXPECT_EQ(invoke({"groebner", "4", "5", "6"}).code, cli::kExitValidation);
  EXPECT_EQ(invoke({"groebner", "4", "5", "6", "--fan", "--sizes"}).code, cli::kExitValidation);
}

TEST(Cli, Ed3Verify) {
  const auto j = invoke_json({"ed3", "--d", "3,2,5", "--f3", "3", "--verify", "--json"});
  EXPECT_EQ(j.at("gens"), Json::parse("[10,15,18]"));
  EXPECT_EQ(j.at("graver").at("elements").size(), 5u);
  EXPECT_EQ(j.at("ugb").at("elements").size(), 3u);
  EXPECT_EQ(j.at("verified"), true);
  EXPECT_EQ(ed3_from_json(j.at("params")), (Ed3Parameters{3, 2, 5, 3}));
  EXPECT_EQ(invoke({"ed3", "--d", "2,4,3", "--f3", "1"}).code, cli::kExitValidation);
}

TEST(Cli, Census) {
  const auto j = invoke_json({"census", "--frobenius", "11", "--brute-cap", "40", "--json"});
  bool found = false;
  for (const auto& s : j.at("semigroups")) found = found || s.at("gens") == Json::parse("[4,6,9]");
  EXPECT_TRUE(found);
  EXPECT_EQ(j.at("brute_force_checked"), true);
  const auto row = census_row_from_json(invoke_json({"census", "--frobenius", "101", "--json"}));
  EXPECT_EQ(row, (CensusRow{101, 194, 86, 5}));
  EXPECT_EQ(invoke({"census", "--frobenius", "45", "--brute-cap", "40"}).code, cli::kExitValidation);
}

TEST(Cli, ScanWithCheckpoint) {
  const auto path = (std::filesystem::temp_directory_path() / ("torbase_cli_scan_" + std::to_string(::getpid()))).string();
  std::filesystem::remove(path);
  const std::vector<std::string> args{"--fan-cap", "3", "scan", "--dim", "3", "--min", "5", "--max", "16",
                                      "--conjecture", "1,2", "--checkpoint", path, "--jobs", "1"};
  const auto first = invoke(args);
  EXPECT_EQ(first.code, 0) << first.err;
  EXPECT_FALSE(first.out.empty());
  std::istringstream lines(first.out);
  for (std::string line; std::getline(lines, line);) EXPECT_NO_THROW(finding_from_json(Json::parse(line)));
  const auto again = invoke(args);
  EXPECT_EQ(again.code, 0);
  EXPECT_TRUE(again.out.empty());
  EXPECT_NE(again.err.find("scanned 220 of 220"), std::string::npos) << again.err;
  EXPECT_EQ(invoke({"scan", "--dim", "3", "--min", "5", "--max", "16", "--conjecture", "7"}).code, cli::kExitValidation);
  std::filesystem::remove(path);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(invoke({"--help"}).code, cli::kExitOk);
  EXPECT_EQ(invoke({}).code, cli::kExitValidation);
  EXPECT_EQ(invoke({"frobnicate"}).code, cli::kExitValidation);
  EXPECT_EQ(invoke({"bases"}).code, cli::kExitValidation);
  EXPECT_EQ(invoke({"bases", "0", "5"}).code, cli::kExitValidation);
  EXPECT_EQ(invoke({"bases", "4", "5", "6", "--kind", "nope"}).code, cli::kExitValidation);
  const auto capped = invoke({"--graver-cap", "2", "bases", "4", "5", "6", "--kind", "graver"});
  EXPECT_EQ(capped.code, cli::kExitResource);
  EXPECT_TRUE(capped.out.empty());
  EXPECT_FALSE(capped.err.empty());

  ::setenv("TORBASE_GRAVER_CAP", "2", 1);
  EXPECT_EQ(invoke({"bases", "4", "5", "6", "--kind", "graver"}).code, cli::kExitResource);
  ::setenv("TORBASE_GRAVER_CAP", "many", 1);
  EXPECT_EQ(invoke({"bases", "4", "5", "6", "--kind", "graver"}).code, cli::kExitValidation);
  ::unsetenv("TORBASE_GRAVER_CAP");
}

TEST(CliProperty, JsonOutputIsStable) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"--json", "classify", "60", "280", "315", "378", "--families"},
           {"--json", "groebner", "10", "15", "18", "--fan"},
           {"--json", "bases", "8", "9", "10", "12"}}) {
    const auto a = invoke(args), b = invoke(args);
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
  }
}

}  // namespace
}  // namespace torbase
