#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "congames/cli.hpp"
#include "congames/document.hpp"

using namespace congames;

namespace {

const std::string kRoot = std::string(CONGAMES_SOURCE_DIR) + "/";

struct CliRun {
  int code;
  std::string out;
  std::string err;
  Json json() const { return Json::parse(out); }
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  for (auto& a : args)
    if (a.rfind("fixtures/", 0) == 0 || a.rfind("tests/", 0) == 0) a = kRoot + a;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Cli, ValidateAllFixtures) {
  for (const std::string f : {"fixtures/g_seq.json", "fixtures/g_conc.json", "fixtures/g_race.json",
                              "fixtures/g_choice.json", "fixtures/chain3.json", "fixtures/empty.json",
                              "fixtures/g_watch.json", "fixtures/levels.json", "fixtures/quantum.json",
                              "fixtures/symmetry.json", "fixtures/pullbacks.json", "fixtures/compose.json",
                              "fixtures/dsl/env.json"}) {
    CliRun r = run({"validate", f});
    EXPECT_EQ(r.code, kExitHolds) << f << r.out;
    EXPECT_EQ(r.json()["schema"], 1);
  }
}

TEST(Cli, InnocenceWitness) {
  CliRun r = run({"check", "fixtures/g_conc.json", "--strategy", "S_ii", "--innocent"});
  EXPECT_EQ(r.code, kExitFails);
  Json w = r.json()["checks"]["innocent"]["witness"];
  EXPECT_EQ(w["s"], "p");
  EXPECT_EQ(w["s'"], "o");
  EXPECT_EQ(run({"check", "fixtures/g_conc.json", "--strategy", "S_i"}).code, kExitHolds);
}

TEST(Cli, ExpectedPayoff) {
  CliRun r = run({"payoff", "fixtures/g_watch.json", "--sigma", "S_watch", "--tau", "tau_half", "--expected"});
  ASSERT_EQ(r.code, kExitHolds) << r.out << r.err;
  Json j = r.json();
  EXPECT_EQ(j["expected"], 0);
  EXPECT_EQ(j["win_prob"], 0.5);
}

TEST(Cli, CopycatDotMatchesGolden) {
  CliRun r = run({"copycat", "fixtures/g_seq.json", "--game", "G_seq", "--dot"});
  ASSERT_EQ(r.code, kExitHolds);
  EXPECT_EQ(r.out, slurp(kRoot + "tests/golden/copycat_g_seq.dot"));
  EXPECT_EQ(run({"copycat", "fixtures/g_seq.json", "--game", "G_seq", "--dot"}).out, r.out);
}

TEST(Cli, ErrorsAreJson) {
  CliRun missing = run({"validate", "fixtures/nope.json"});
  EXPECT_EQ(missing.code, kExitError);
  EXPECT_EQ(missing.json()["error"]["kind"], "io");
  CliRun unknown = run({"check", "fixtures/g_conc.json", "--strategy", "Nope"});
  EXPECT_EQ(unknown.code, kExitError);
  EXPECT_EQ(run({"frobnicate"}).code, kExitError);
  EXPECT_EQ(run({}).code, kExitError);
  CliRun syntax = run({"dsl", "check", "fixtures/dsl/copycat.sdsl", "--doc", "fixtures/dsl/env.json", "--max-configs", "x"});
  EXPECT_EQ(syntax.code, kExitError);
}

TEST(Cli, MaxConfigs) {
  CliRun r = run({"configs", "fixtures/g_watch.json", "--game", "G_watch", "--max-configs", "3"});
  EXPECT_EQ(r.code, kExitError);
  EXPECT_EQ(r.json()["error"]["kind"], "resource");
  setenv("CONGAMES_MAX_CONFIGS", "3", 1);
  CliRun env = run({"configs", "fixtures/g_watch.json", "--game", "G_watch"});
  unsetenv("CONGAMES_MAX_CONFIGS");
  EXPECT_EQ(env.code, kExitError);
  CliRun ok = run({"configs", "fixtures/g_watch.json", "--game", "G_watch"});
  EXPECT_EQ(ok.code, kExitHolds);
  EXPECT_EQ(ok.json()["configurations"].size(), 8u);
}

TEST(Cli, OutputFile) {
  auto path = (std::filesystem::temp_directory_path() / "congames_cli_out.json").string();
  CliRun r = run({"configs", "fixtures/g_seq.json", "--game", "G_seq", "-o", path});
  EXPECT_EQ(r.code, kExitHolds);
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(Json::parse(slurp(path))["configurations"].size(), 3u);
  std::filesystem::remove(path);
}

TEST(Cli, Subcommands) {
  EXPECT_EQ(run({"check", "fixtures/g_race.json", "--game", "G_race", "--racefree"}).code, kExitFails);
  EXPECT_EQ(run({"check", "fixtures/levels.json", "--game", "G_lv", "--levels"}).code, kExitHolds);
  EXPECT_EQ(run({"check", "fixtures/levels.json", "--game", "G_lv_bad", "--levels"}).code, kExitFails);
  EXPECT_EQ(run({"check", "fixtures/g_watch.json", "--strategy", "S_watch", "--winning"}).code, kExitHolds);
  EXPECT_EQ(run({"prob", "validate", "fixtures/g_watch.json", "--strategy", "S_watch"}).code, kExitHolds);
  CliRun w = run({"quantum", "weight", "fixtures/quantum.json", "--qes", "Q_plus", "--config", "t"});
  EXPECT_EQ(w.code, kExitHolds);
  EXPECT_NEAR(w.json()["weight"].get<double>(), 0.5, 1e-12);
  EXPECT_EQ(run({"quantum", "validate", "fixtures/quantum.json", "--qes", "Q_noncommuting"}).code, kExitFails);
  EXPECT_EQ(run({"sym", "validate", "fixtures/symmetry.json", "--family", "swap_no_inverse"}).code, kExitFails);
  CliRun c = run({"compose", "fixtures/dsl/env.json", "--sigma", "nope", "--tau", "nope"});
  EXPECT_EQ(c.code, kExitError);
  CliRun d = run({"dsl", "eval", "fixtures/dsl/sum.sdsl", "--doc", "fixtures/dsl/env.json"});
  EXPECT_EQ(d.code, kExitHolds) << d.out << d.err;
  CliRun sweep = run({"prob", "sweep", "--samples", "40", "--seed", "3"});
  EXPECT_EQ(sweep.code, kExitHolds);
  EXPECT_EQ(sweep.json()["agree"], 40);
}
