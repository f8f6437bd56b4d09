#include "ffhyper/cli.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace ffhyper;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path temp_file(const std::string& name, const std::string& content) {
  const fs::path p = fs::temp_directory_path() / ("ffhyper_test_" + name);
  std::ofstream(p) << content;
  return p;
}

}  // namespace

TEST(Parse, QList) {
  auto c = parse_args({"--q-list", "3,4,5", "--identity", "euler-gauss"});
  const std::vector<std::pair<int, int>> want{{3, 1}, {2, 2}, {5, 1}};
  EXPECT_EQ(c.fields, want);
  EXPECT_EQ(c.identities, std::vector<std::string>{"euler-gauss"});
  EXPECT_EQ(c.mode, Mode::Exhaustive);
  EXPECT_EQ(c.backend, BackendKind::Exact);
}

TEST(Parse, PairedPAndR) {
  auto c = parse_args({"--p", "2", "--r", "2", "--p", "7", "--r", "1", "--all", "--mode", "sample", "--samples", "30",
                       "--seed", "99", "--backend", "float", "--max-arity", "2", "--json"});
  const std::vector<std::pair<int, int>> want{{2, 2}, {7, 1}};
  EXPECT_EQ(c.fields, want);
  EXPECT_TRUE(c.all);
  EXPECT_EQ(c.identities.size(), registry().size());
  EXPECT_EQ(c.mode, Mode::Sample);
  EXPECT_EQ(c.samples, 30u);
  EXPECT_EQ(c.seed, 99u);
  EXPECT_EQ(c.backend, BackendKind::Float);
  EXPECT_EQ(c.max_arity, 2);
  EXPECT_TRUE(c.json);
}

TEST(Parse, Rejects) {
  const std::vector<std::vector<std::string>> bad{
      {"--q-list", "6", "--all"},
      {"--q-list", "81", "--all"},
      {"--q-list", "3x", "--all"},
      {"--p", "4", "--r", "1", "--all"},
      {"--p", "3", "--all"},
      {"--q-list", "5"},
      {"--all"},
      {"--q-list", "5", "--identity", "nope"},
      {"--q-list", "5", "--all", "--mode", "random"},
      {"--q-list", "5", "--all", "--backend", "quad"},
      {"--q-list", "5", "--all", "--samples", "0"},
      {"--q-list", "5", "--all", "--bogus"},
  };
  for (const auto& args : bad) {
    EXPECT_THROW(parse_args(args), UsageError) << args[1];
    auto r = run(args);
    EXPECT_EQ(r.code, 2) << args[1];
    EXPECT_FALSE(r.err.empty());
  }
}

TEST(Parse, ConfigFileWithOverrides) {
  auto p = temp_file("cfg.txt",
                     "# sweep\n"
                     "q-list = 3,5\n"
                     "identity = euler-gauss, int-1F1\n"
                     "mode = sample\n"
                     "samples = 17  # trailing comment\n"
                     "seed = 4\n"
                     "json = true\n");
  auto c = parse_args({"--config", p.string(), "--samples", "5"});
  const std::vector<std::pair<int, int>> want{{3, 1}, {5, 1}};
  EXPECT_EQ(c.fields, want);
  EXPECT_EQ(c.identities, (std::vector<std::string>{"euler-gauss", "int-1F1"}));
  EXPECT_EQ(c.mode, Mode::Sample);
  EXPECT_EQ(c.samples, 5u);
  EXPECT_EQ(c.seed, 4u);
  EXPECT_TRUE(c.json);
  auto c2 = parse_args({"--config", p.string(), "--identity", "tb-i", "--q-list", "7"});
  EXPECT_EQ(c2.identities, std::vector<std::string>{"tb-i"});
  EXPECT_EQ(c2.fields, (std::vector<std::pair<int, int>>{{7, 1}}));
  EXPECT_EQ(c2.samples, 17u);

  auto bad = temp_file("bad.txt", "samples\n");
  EXPECT_THROW(parse_args({"--config", bad.string()}), UsageError);
  EXPECT_THROW(parse_args({"--config", (fs::temp_directory_path() / "ffhyper_missing.txt").string()}), UsageError);
  fs::remove(p);
  fs::remove(bad);
}

TEST(Parse, ConfigFlagsRoundTrip) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"--q-list", "3,4", "--identity", "euler-gauss", "--identity", "tb-ii"},
           {"--p", "5", "--r", "1", "--all", "--mode", "sample", "--samples", "9", "--seed", "18446744073709551615",
            "--backend", "float", "--max-arity", "1", "--budget", "77", "--json", "--timings", "--threads", "2",
            "--max-witnesses", "4", "--out", "x.json", "--inject-fault", "tb-i"}}) {
    auto c = parse_args(args);
    EXPECT_EQ(parse_args(config_flags(c)), c);
  }
}

TEST(Run, PassAndText) {
  auto r = run({"--q-list", "5", "--identity", "gauss-inversion"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("PASS"), std::string::npos);
  EXPECT_NE(r.out.find("gauss-inversion"), std::string::npos);
  EXPECT_NE(r.out.find("checked=4"), std::string::npos);
}

TEST(Run, JsonShape) {
  auto r = run({"--q-list", "3,5", "--identity", "euler-gauss", "--identity", "kummer-product", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["version"], 1);
  ASSERT_EQ(j["reports"].size(), 4u);
  for (const auto& rep : j["reports"]) {
    for (const char* key : {"identity", "p", "r", "q", "mode", "backend", "status", "checked", "skipped",
                            "failure_count", "failures", "duration_ms"})
      EXPECT_TRUE(rep.contains(key)) << key;
    EXPECT_TRUE(rep["duration_ms"].is_null());
    EXPECT_EQ(rep["status"], "pass");
  }
  EXPECT_EQ(j["totals"]["failures"], 0);
  EXPECT_EQ(j["digest"].get<std::string>().size(), 64u);
  EXPECT_EQ(parse_args(j["config"]["flags"].get<std::vector<std::string>>()),
            parse_args({"--q-list", "3,5", "--identity", "euler-gauss", "--identity", "kummer-product", "--json"}));
}

TEST(Run, InjectedFaultExitsOne) {
  auto r = run({"--q-list", "5", "--identity", "euler-gauss", "--json", "--inject-fault", "euler-gauss"});
  EXPECT_EQ(r.code, 1);
  auto j = nlohmann::json::parse(r.out);
  const auto& rep = j["reports"][0];
  EXPECT_EQ(rep["status"], "fail");
  ASSERT_FALSE(rep["failures"].empty());
  const auto& w = rep["failures"][0];
  for (const char* key : {"params", "point", "lhs", "rhs"}) EXPECT_TRUE(w.contains(key)) << key;
  EXPECT_NE(w["lhs"], w["rhs"]);
  auto t = run({"--q-list", "5", "--identity", "euler-gauss", "--inject-fault", "euler-gauss"});
  EXPECT_EQ(t.code, 1);
  EXPECT_NE(t.out.find("FAIL"), std::string::npos);
}

TEST(Run, ByteIdenticalAcrossRuns) {
  const std::vector<std::string> args{"--q-list", "4,7", "--identity", "int-FB", "--identity", "F4red-trans",
                                      "--mode",   "sample", "--samples", "25", "--seed", "11", "--json"};
  auto a = run(args), b = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
}

TEST(Run, OutFile) {
  const fs::path p = fs::temp_directory_path() / "ffhyper_out.json";
  auto r = run({"--q-list", "3", "--identity", "tb-i", "--json", "--out", p.string()});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(p);
  auto j = nlohmann::json::parse(in);
  EXPECT_EQ(j["reports"].size(), 1u);
  fs::remove(p);
  auto bad = run({"--q-list", "3", "--identity", "tb-i", "--out", "/nonexistent-dir/x.json"});
  EXPECT_EQ(bad.code, 2);
}

TEST(Run, BudgetOverrunIsUsageError) {
  auto r = run({"--q-list", "5", "--identity", "euler-gauss", "--budget", "10"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("budget"), std::string::npos);
}

TEST(Run, Help) {
  EXPECT_THROW(parse_args({"--help"}), HelpRequested);
  auto r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("--q-list"), std::string::npos);
  EXPECT_TRUE(r.err.empty());
}

TEST(Run, ListsIdentities) {
  auto r = run({"--list"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("euler-gauss"), std::string::npos);
  EXPECT_NE(r.out.find("psi-choice"), std::string::npos);
}
