#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "crg/serialize.hpp"

namespace fs = std::filesystem;
using crg::Json;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run crg_run(const std::string& args) {
  const std::string cmd = std::string(CRG_BINARY) + " " + args + " 2>&1";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int st = pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

fs::path scratch(const std::string& tag) {
  const fs::path d = fs::temp_directory_path() / ("crg_cli_" + tag + "_" + std::to_string(::getpid()));
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

}  // namespace

TEST(Cli, HelpAndUnknownCommands) {
  EXPECT_EQ(crg_run("--help").code, 0);
  EXPECT_EQ(crg_run("").code, 2);
  EXPECT_EQ(crg_run("frobnicate").code, 2);
  EXPECT_EQ(crg_run("invariants G28").code, 2);  // --degree is required
}

TEST(Cli, GroupBuildReportsTheOrder) {
  const auto r = crg_run("--json group build G28");
  ASSERT_EQ(r.code, 0) << r.out;
  const Json j = Json::parse(r.out);
  EXPECT_TRUE(j["pass"].get<bool>());
  EXPECT_NE(r.out.find("1152"), std::string::npos);
}

TEST(Cli, VerifyTablesIsDeterministic) {
  const auto a = crg_run("--json verify-tables --only G28");
  const auto b = crg_run("--json verify-tables --only G28");
  ASSERT_EQ(a.code, 0) << a.out;
  EXPECT_EQ(a.out, b.out);
  const Json j = Json::parse(a.out);
  EXPECT_TRUE(j["pass"].get<bool>());
  for (const auto& c : j["checks"]) EXPECT_NE(c["name"].get<std::string>().find("G28"), std::string::npos);
  EXPECT_EQ(j.count("timings"), 0u);
}

TEST(Cli, OnlyRejectsUnknownGroups) { EXPECT_EQ(crg_run("verify-tables --only G99").code, 2); }

TEST(Cli, PerturbedCatalogFailsAndNamesTheIdentity) {
  const fs::path dir = scratch("perturbed");
  ASSERT_EQ(crg_run("catalog export " + dir.string()).code, 0);
  const fs::path file = dir / "G30.json";
  ASSERT_TRUE(fs::exists(file));
  Json j;
  {
    std::ifstream in(file);
    in >> j;
  }
  j["degrees"][1] = 14;
  {
    std::ofstream out(file);
    out << j.dump(1);
  }
  const auto r = crg_run("--catalog " + dir.string() + " verify-tables --only G30");
  EXPECT_EQ(r.code, 1) << r.out;
  EXPECT_NE(r.out.find("FAIL  G30: order = product of degrees"), std::string::npos) << r.out;
  fs::remove_all(dir);
}

TEST(Cli, CatalogErrors) {
  EXPECT_EQ(crg_run("--catalog /nonexistent/crg catalog list").code, 2);
  const fs::path dir = scratch("broken");
  {
    std::ofstream out(dir / "G28.json");
    out << "{ \"name\": \"G28\", ";
  }
  const auto r = crg_run("--catalog " + dir.string() + " catalog list");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("crg:"), std::string::npos);
  fs::remove_all(dir);
}

TEST(Cli, CatalogListAndK3) {
  const auto l = crg_run("catalog list");
  ASSERT_EQ(l.code, 0);
  for (const auto* name : {"G28", "G29", "G30", "G31", "G(2,1,4)"}) EXPECT_NE(l.out.find(name), std::string::npos);
  EXPECT_EQ(crg_run("catalog k3").code, 0);
}

TEST(Cli, EliminationAndItsBudget) {
  const auto r = crg_run("--json reproduce-elimination");
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("b^2 - 16"), std::string::npos);
  const auto capped = crg_run("--gb-steps 10 reproduce-elimination");
  EXPECT_EQ(capped.code, 2);
  EXPECT_NE(capped.out.find("budget"), std::string::npos);
}

TEST(Cli, SpringerSweeps) {
  EXPECT_EQ(crg_run("springer 'G(2,1,4)'").code, 0);
  EXPECT_EQ(crg_run("springer G30 --e 30").code, 0);
  EXPECT_EQ(crg_run("springer G29").code, 2);
}

TEST(Cli, PencilCommands) {
  EXPECT_EQ(crg_run("pencil special").code, 0);
  EXPECT_EQ(crg_run("pencil certify --c 3/7").code, 0);
  EXPECT_EQ(crg_run("pencil certify --c 0").code, 1);  // the member is reducible
  EXPECT_EQ(crg_run("pencil certify --c banana").code, 2);
}

TEST(Cli, QuotientAndLines) {
  const auto q = crg_run("--json quotient G28 --d 6 --gamma derived");
  ASSERT_EQ(q.code, 0) << q.out;
  EXPECT_TRUE(Json::parse(q.out)["pass"].get<bool>());
  EXPECT_EQ(crg_run("surface lines G28").code, 0);
  EXPECT_EQ(crg_run("quotient G28 --d 6 --gamma bogus").code, 2);
}

TEST(Cli, TimingsOnlyOnRequest) {
  const auto r = crg_run("--json --timings group build 'G(2,2,4)'");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(Json::parse(r.out).count("timings"), 1u);
}

TEST(Cli, DegreeCapIsABudget) { EXPECT_EQ(crg_run("--degree-cap 4 invariants G28 --degree 8").code, 2); }
