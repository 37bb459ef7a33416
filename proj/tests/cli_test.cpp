#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun run(const std::string& args) {
  const std::string cmd = std::string(GROWTHKIT_CLI) + " " + args + " 2>/dev/null";
  CliRun r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("growthkit_cli_test_" + name);
  std::ofstream(path) << text;
  return path.string();
}

}  // namespace

TEST(Cli, GoodWords) {
  const CliRun r = run("goodwords -m 2 --phi 1,0 -k 2");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "a1 a1\na1 a2\na1 a2^-1\nd_k=3\n");
  const CliRun c = run("goodwords -m 2 --phi 1,0 -k 6 --count-only");
  EXPECT_EQ(c.code, 0);
  EXPECT_EQ(c.out, "d_k=143 bound=72 PASS\n");
}

TEST(Cli, BadInputExitsTwo) {
  EXPECT_EQ(run("goodwords -m 2 --phi 2,4 -k 4").code, 2);
  EXPECT_EQ(run("goodwords -m 3 --phi 1,0 -k 4").code, 2);
  EXPECT_EQ(run("bound -m 1 -C 1 --rho 10").code, 2);
  EXPECT_EQ(run("rho --set kind=nowhere").code, 2);
  EXPECT_EQ(run("rho --set colour=red").code, 2);
  EXPECT_EQ(run("no-such-command").code, 2);
}

TEST(Cli, RhoFoundAndNotFound) {
  const CliRun r = run("rho --set kind=free_abelian --set m=2");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "rho=4 witness=a1 a2 a1^-1 a2^-1 exhaustive_up_to=4\n");
  const CliRun j = run("rho --set kind=nilpotent_class2 --set m=2 --format json");
  EXPECT_EQ(j.code, 0);
  EXPECT_NE(j.out.find("\"rho\": 8"), std::string::npos);
  const CliRun nf = run("rho --set kind=nilpotent_class2 --set m=2 --max-len 6");
  EXPECT_EQ(nf.code, 3);
  EXPECT_EQ(nf.out, "rho>6 not_found max_len=6\n");
}

TEST(Cli, BudgetExitsFour) {
  EXPECT_EQ(run("rho --set kind=nilpotent_class2 --set m=2 --max-states 20").code, 4);
  EXPECT_EQ(run("ball --set kind=free_abelian --set m=2 --n-max 20 --max-states 20").code, 4);
}

TEST(Cli, DumpConfigRoundTrip) {
  const std::string path = write_temp("rt.cfg", "kind = finite_perm\n degree=3\nperm.a=2,3,1\nperm.b=2,1,3\n");
  const CliRun d = run("rho --config " + path + " --set max_len=9 --dump-config");
  EXPECT_EQ(d.code, 0);
  EXPECT_EQ(d.out, "degree=3\nkind=finite_perm\nmax_len=9\nperm.a=2,3,1\nperm.b=2,1,3\n");
  const std::string again = write_temp("rt2.cfg", d.out);
  EXPECT_EQ(run("rho --config " + again + " --dump-config").out, d.out);
  EXPECT_EQ(run("rho --config " + path).out, run("rho --config " + again).out);
}

TEST(Cli, BallCsv) {
  const CliRun r = run("ball --set kind=free_abelian --set m=2 --n-max 3");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out,
            "n,sphere,ball,rate_root,rate_ratio\n0,1,1,,4\n1,4,5,5,2\n2,8,13,3.605551275,1.5\n3,12,25,2.924017738,\n");
}

TEST(Cli, BoundJson) {
  const CliRun r = run("bound -m 2 -C 1 --rho 1000");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\"k_used\": 22"), std::string::npos);
  EXPECT_NE(r.out.find("\"chain_k\": 22"), std::string::npos);
}

TEST(Cli, ThreadsDoNotChangeOutput) {
  for (const std::string args : {"ball --set kind=nilpotent_class2 --set m=2 --n-max 6 --format json",
                                 "ball --set kind=free_abelian --set m=2 --n-max 4 --lifted",
                                 "rho --set kind=nilpotent_class2 --set m=2 --format json"}) {
    const CliRun one = run(args + " --threads 1");
    const CliRun eight = run(args + " --threads 8");
    EXPECT_EQ(one.code, 0);
    EXPECT_EQ(one.out, eight.out) << args;
  }
}

TEST(Cli, SeriesReportsMonotone) {
  const CliRun r = run("series --n-max 3");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')),
            "n,ball_metabelian,ball_class2,rate_root_metabelian,rate_root_class2,monotone,strict");
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

TEST(Cli, OutWritesFile) {
  const auto path = std::filesystem::temp_directory_path() / "growthkit_cli_test_out.json";
  std::filesystem::remove(path);
  const CliRun r = run("bound -m 2 -C 1 --rho 4 --out " + path.string());
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  EXPECT_NE(text.find("\"vacuous\": true"), std::string::npos);
}

TEST(Cli, SawcheckFlagsShortRelations) {
  // Z^2 violates the hypothesis; violations are expected and do not count as falsification.
  const CliRun r = run("sawcheck --set kind=free_abelian --set m=2 -k 4 -t 2");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\"precondition\": \"false\""), std::string::npos);
}
