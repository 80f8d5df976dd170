#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "config.hpp"
#include "holderlab/parallel.hpp"
#include "runner.hpp"

using namespace holderlab;
using namespace holderlab::cli;
namespace fs = std::filesystem;

namespace {

const char* kMinimal = R"([run]
command = verify-c1a
seed = 7

[instance]
n = 1
symmetry = disc
phi = zero
f = const:1

[estimate]
alpha = 0.5
t = 0.25

[grid]
resolution = 129
)";

std::string replace(std::string text, const std::string& from, const std::string& to) {
  const auto pos = text.find(from);
  if (pos != std::string::npos) text.replace(pos, from.size(), to);
  return text;
}

std::string error_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("holderlab_test_" + name);
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST(Config, MinimalValid) {
  const RunConfig c = parse_config(kMinimal);
  EXPECT_EQ(c.command, "verify-c1a");
  EXPECT_EQ(c.n, 1);
  EXPECT_EQ(c.symmetry, Symmetry::Disc);
  EXPECT_EQ(c.phi, "zero");
  EXPECT_EQ(c.f, "const:1");
  EXPECT_EQ(c.alpha, 0.5);
  EXPECT_EQ(c.t, 0.25);
  EXPECT_EQ(c.resolution, 129);
  EXPECT_EQ(c.seed, 7u);
}

TEST(Config, AlphaOutOfRange) {
  const std::string e = error_of(replace(kMinimal, "alpha = 0.5", "alpha = 1.5"));
  EXPECT_NE(e.find("alpha"), std::string::npos) << e;
  EXPECT_NE(e.find("line 12"), std::string::npos) << e;
}

TEST(Config, AlphaOneAllowedForHolderZero) {
  std::string text = replace(kMinimal, "alpha = 0.5", "alpha = 1");
  EXPECT_FALSE(error_of(text).empty());
  text = replace(text, "verify-c1a", "verify-c0a");
  EXPECT_EQ(error_of(text), "");
}

TEST(Config, UnknownPresetNamesLine) {
  const std::string e = error_of(replace(kMinimal, "phi = zero", "phi = cubic_spline"));
  EXPECT_NE(e.find("line 8"), std::string::npos) << e;
  EXPECT_NE(e.find("cubic_spline"), std::string::npos) << e;
}

TEST(Config, UnknownKeyAndSection) {
  EXPECT_NE(error_of(replace(kMinimal, "seed = 7", "seed = 7\ncolour = red")).find("line 4"), std::string::npos);
  EXPECT_NE(error_of(replace(kMinimal, "[grid]", "[mesh]")).find("line 15"), std::string::npos);
  EXPECT_NE(error_of(std::string("n = 1\n") + kMinimal).find("line 1"), std::string::npos);
  EXPECT_NE(error_of(replace(kMinimal, "seed = 7", "seed = 7\nseed = 8")).find("duplicate"), std::string::npos);
  EXPECT_NE(error_of(replace(kMinimal, "t = 0.25", "t = quarter")).find("line 13"), std::string::npos);
}

TEST(Config, RangeChecks) {
  EXPECT_FALSE(error_of(replace(kMinimal, "resolution = 129", "resolution = 31")).empty());
  EXPECT_FALSE(error_of(replace(kMinimal, "resolution = 129", "resolution = 128")).empty());
  EXPECT_FALSE(error_of(replace(kMinimal, "t = 0.25", "t = 1")).empty());
  EXPECT_FALSE(error_of(replace(kMinimal, "n = 1", "n = 2")).empty());
  EXPECT_FALSE(error_of(replace(kMinimal, "verify-c1a", "plot")).empty());
  EXPECT_FALSE(error_of(replace(kMinimal, "t = 0.25", "t = 0.25\neps = 0.1, 0.2")).empty());
  EXPECT_EQ(error_of(replace(kMinimal, "t = 0.25", "t = 0.25\neps = 0.2, 0.1, 0.05")), "");
}

TEST(Config, CommentsAndWhitespace) {
  const std::string text = replace(kMinimal, "seed = 7", "  seed=7   # master seed\n# note");
  EXPECT_EQ(parse_config(text).seed, 7u);
}

TEST(Config, HashIgnoresOutputDirectory) {
  RunConfig a = parse_config(kMinimal);
  RunConfig b = a;
  b.out = "elsewhere";
  EXPECT_EQ(a.hash(), b.hash());
  EXPECT_EQ(a.hash().size(), 16u);
  b.seed = 8;
  EXPECT_NE(a.hash(), b.hash());
}

TEST(Run, CheckGeometryPasses) {
  RunConfig c = parse_config(replace(kMinimal, "verify-c1a", "check-geometry"));
  const fs::path dir = scratch("geometry");
  const auto outcome = run(c, dir.string());
  EXPECT_EQ(outcome.verdict, Verdict::Pass) << outcome.message;
  EXPECT_TRUE(fs::exists(dir / "geometry.csv"));
  EXPECT_TRUE(fs::exists(dir / "summary.json"));
  const std::string csv = slurp(dir / "geometry.csv");
  EXPECT_EQ(csv.rfind("# tool=" + std::string(kToolVersion), 0), 0u);
  EXPECT_NE(csv.find("# config_hash=" + c.hash()), std::string::npos);
  EXPECT_NE(csv.find("# seed=7"), std::string::npos);
  EXPECT_NE(csv.find("# resolution=129"), std::string::npos);
}

TEST(Run, VerifyC1aPassesOnConstantDensity) {
  RunConfig c = parse_config(replace(kMinimal, "resolution = 129", "resolution = 65"));
  const auto outcome = run(c, scratch("c1a").string());
  EXPECT_EQ(outcome.verdict, Verdict::Pass) << outcome.message;
}

TEST(Run, ByteIdenticalAcrossRunsAndThreads) {
  RunConfig c = parse_config(replace(replace(kMinimal, "verify-c1a", "second-diff"), "resolution = 129", "resolution = 65"));
  const fs::path a = scratch("det_a");
  const fs::path b = scratch("det_b");
  const unsigned before = thread_count();
  set_thread_count(1);
  run(c, a.string());
  set_thread_count(4);
  run(c, b.string());
  set_thread_count(before);
  for (const auto& entry : fs::directory_iterator(a)) {
    EXPECT_EQ(slurp(entry.path()), slurp(b / entry.path().filename())) << entry.path().filename();
  }
}

TEST(Run, CoarseSecondDifferenceIsInconclusive) {
  RunConfig c = parse_config(replace(replace(replace(kMinimal, "verify-c1a", "second-diff"), "resolution = 129",
                                             "resolution = 65"),
                                     "phi = zero", "phi = abspow:0.5"));
  EXPECT_EQ(run(c, scratch("coarse").string()).verdict, Verdict::Inconclusive);
}
