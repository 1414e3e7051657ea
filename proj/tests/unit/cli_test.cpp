#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "mixedfree/mixedfree.hpp"

using namespace mixedfree;
namespace fs = std::filesystem;

namespace {

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("mixedfree_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  void write(const std::string& name, const std::string& text) const { std::ofstream(path(name)) << text; }

  std::string read(const std::string& name) const {
    std::ifstream in(path(name));
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  // Exit status of the CLI with stdout and stderr discarded.
  int run(const std::string& args) const {
    const std::string cmd = std::string(MIXEDFREE_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  Json report(const std::string& name) const { return Json::parse(read(name)); }

  fs::path dir_;
};

std::string family_params(const std::string& fam) {
  if (fam == "grid") return "3 4";
  if (fam == "disjoint_cliques") return "3 8";
  if (fam == "erdos_renyi") return "30 40";
  if (fam == "bounded_tww") return "30 2";
  if (fam == "cograph") return "30 60";
  return "12";
}

}  // namespace

TEST_F(Cli, RoundTripOnEveryFamily) {
  for (const auto& fam : generator_families()) {
    const auto g = path(fam + ".graph"), c = path(fam + ".col");
    ASSERT_EQ(run("gen " + fam + " " + family_params(fam) + " --seed 5 -o " + g), 0) << fam;
    for (int d : {2, 3, 4}) {
      ASSERT_EQ(run("color " + g + " --d " + std::to_string(d) + " -o " + c + " --report " + path("r.json")), 0) << fam;
      ASSERT_EQ(run("verify " + g + " --coloring " + c + " --report " + path("v.json")), 0) << fam << " d=" << d;
      EXPECT_TRUE(report("v.json")["outputs"]["valid"].get<bool>());
    }
  }
}

TEST_F(Cli, VerifyRejectsImproperColouring) {
  write("p.graph", format_graph(path_graph(4)));
  write("bad.col", "v 1 1\nv 2 1\nv 3 2\nv 4 1\n");
  EXPECT_EQ(run("verify " + path("p.graph") + " --coloring " + path("bad.col")), 1);
}

TEST_F(Cli, P4ColouredWithTwoColours) {
  write("p4.graph", format_graph(path_graph(4)));
  ASSERT_EQ(run("color " + path("p4.graph") + " --d 3 -o " + path("p4.col") + " --report " + path("r.json")), 0);
  const auto r = report("r.json");
  EXPECT_EQ(r["schema"], 1);
  EXPECT_EQ(r["command"], "color");
  EXPECT_EQ(r["outputs"]["colors"], 2);
  EXPECT_EQ(r["outputs"]["omega"], 2);
  EXPECT_TRUE(r["checks"]["proper"].get<bool>());
}

TEST_F(Cli, ThreeCliquesTraceHasThreeBlobs) {
  ASSERT_EQ(run("gen disjoint_cliques 3 8 -o " + path("c.graph")), 0);
  ASSERT_EQ(run("color " + path("c.graph") + " --d 4 --trace " + path("t.json") + " -o " + path("c.col") + " --report " +
                path("r.json")),
            0);
  const auto t = Json::parse(read("t.json"));
  EXPECT_EQ(t["nodes"][0]["blobs"].size(), 3u);
  const auto r = report("r.json");
  EXPECT_TRUE(r["checks"]["trace_ok"].get<bool>());
  EXPECT_EQ(r["outputs"]["chi_exact"], 8);
}

TEST_F(Cli, ReportsAreDeterministicApartFromTiming) {
  ASSERT_EQ(run("gen erdos_renyi 24 50 --seed 3 -o " + path("g.graph")), 0);
  for (const char* name : {"a.json", "b.json"})
    ASSERT_EQ(run("color " + path("g.graph") + " --d 3 --verify-promise -o " + path("g.col") + " --report " + path(name)), 0);
  auto a = report("a.json"), b = report("b.json");
  ASSERT_TRUE(a.contains("timing"));
  EXPECT_EQ(a.back(), a["timing"]);
  a.erase("timing");
  b.erase("timing");
  EXPECT_EQ(a.dump(), b.dump());
}

TEST_F(Cli, MalformedInputExitsTwo) {
  write("bad.graph", "p edge 3 1\ne 1 7\n");
  EXPECT_EQ(run("color " + path("bad.graph") + " --d 3"), 2);
  EXPECT_EQ(run("color " + path("missing.graph") + " --d 3"), 2);
  EXPECT_EQ(run("color --d 3"), 2);
  EXPECT_EQ(run("gen nope 3"), 2);
}

TEST_F(Cli, CapExceededExitsThree) {
  ASSERT_EQ(run("gen path 12 -o " + path("p.graph")), 0);
  EXPECT_EQ(run("tww " + path("p.graph")), 3);
  EXPECT_EQ(run("minor " + path("p.graph") + " --d 3 --caps minor_n=8"), 3);
}

TEST_F(Cli, MinorWitnessVerifies) {
  write("p4.graph", format_graph(path_graph(4)));
  ASSERT_EQ(run("minor " + path("p4.graph") + " --d 2 -o " + path("w.json") + " --report " + path("r.json")), 0);
  EXPECT_TRUE(report("r.json")["outputs"]["found"].get<bool>());
  EXPECT_EQ(run("verify " + path("p4.graph") + " --witness " + path("w.json")), 0);
}

TEST_F(Cli, TwinwidthOfSequence) {
  ASSERT_EQ(run("gen bounded_tww 8 1 --seed 2 -o " + path("g.graph") + " --sequence " + path("g.seq")), 0);
  ASSERT_EQ(run("tww " + path("g.graph") + " --sequence " + path("g.seq") + " --report " + path("r.json")), 0);
  EXPECT_LE(report("r.json")["outputs"]["width"].get<int>(), 1);
}
