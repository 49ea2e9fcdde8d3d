#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <gtest/gtest.h>

#include "endograph/export.hpp"

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(ENDOGRAPH_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), pipe)) r.out += buf.data();
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace

TEST(Cli, GroupInfo) {
  const auto r = run("group --spec quaternion --info");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("order: 8"), std::string::npos);
  EXPECT_NE(r.out.find("endomorphisms: 28"), std::string::npos);
}

TEST(Cli, DigraphJsonToFile) {
  const std::string path = ::testing::TempDir() + "z2.json";
  const auto r = run("digraph --spec cyclic:2 --kind endo --format json --out " + path);
  ASSERT_EQ(r.code, 0);
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  const auto g = endograph::from_json(ss.str());
  EXPECT_EQ(g.arcs, (std::vector<endograph::Arc>{{1, 0}}));
}

TEST(Cli, CompressedDot) {
  const auto r = run("digraph --spec cyclic:12 --kind endo --compressed --format dot");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("size=4"), std::string::npos);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("digraph --spec cyclic:4 --kind power --compressed").code, 2);
  EXPECT_EQ(run("digraph --spec cyclic:4 --kind bogus").code, 2);
  EXPECT_EQ(run("group --spec nonsense:3").code, 2);
  EXPECT_EQ(run("verify").code, 2);
  EXPECT_EQ(run("verify --check T42").code, 2);
}

TEST(Cli, VerifySingleCheck) {
  const auto r = run("verify --check T3");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("T3 PASS", 0), 0u);
}

TEST(Cli, CatalogListing) {
  const auto r = run("catalog --max-order 8");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("quaternion"), std::string::npos);
  EXPECT_NE(r.out.find("abelian:2,2,2"), std::string::npos);
}
