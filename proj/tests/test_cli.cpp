#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "idealkit/cli.hpp"

using namespace idealkit;
namespace fs = std::filesystem;

namespace {

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

std::string temp_path(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / "idealkit-test-cli";
  fs::create_directories(dir);
  return (dir / name).string();
}

void write_text(const std::string& path, const std::string& text) { std::ofstream(path, std::ios::binary) << text; }

}  // namespace

TEST(Cli, SoftExamples) {
  CliResult a = run({"ideal", "soft", "exp:1/2"});
  EXPECT_EQ(a.code, 0);
  EXPECT_TRUE(contains(a.out, "SOFT (symbolic")) << a.out;
  CliResult b = run({"ideal", "soft", "pow:1"});
  EXPECT_EQ(b.code, 0);
  EXPECT_EQ(b.out, "NOT SOFT (symbolic; subsample ratio constant 1/k)\n");
}

TEST(Cli, CompareAndDelta2) {
  CliResult a = run({"seq", "compare", "pow:2", "pow:1", "--mode", "o"});
  EXPECT_EQ(a.code, 0);
  EXPECT_TRUE(contains(a.out, "HOLDS (symbolic")) << a.out;
  CliResult b = run({"seq", "delta2", "exp:1/2"});
  EXPECT_TRUE(contains(b.out, "FAILS (symbolic")) << b.out;
  CliResult c = run({"seq", "signature", "amp:2;pow:1"});
  EXPECT_EQ(c.code, 0);
  EXPECT_TRUE(contains(c.out, "signature(amp:2;pow:1)")) << c.out;
}

TEST(Cli, MemberIdempotentReport) {
  EXPECT_TRUE(contains(run({"ideal", "member", "exp:1/2", "exp:1/4"}).out, "MEMBER (symbolic"));
  EXPECT_TRUE(contains(run({"ideal", "member", "pow:1", "exp:1/2"}).out, "NOT MEMBER"));
  EXPECT_TRUE(contains(run({"ideal", "idempotent", "pow:1"}).out, "NOT IDEMPOTENT"));
  CliResult r = run({"ideal", "report", "pow:2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "implications: consistent")) << r.out;
}

TEST(Cli, LieCommands) {
  CliResult s = run({"lie", "simple", "sp", "--n", "2"});
  EXPECT_EQ(s.code, 0) << s.err;
  EXPECT_TRUE(contains(s.out, "SIMPLE (Killing nondegenerate, commutant dim 1)")) << s.out;
  EXPECT_TRUE(contains(s.out, "randomized cross-check")) << s.out;

  CliResult c = run({"lie", "check-closure", "sp-literal", "--n", "2"});
  EXPECT_EQ(c.code, 0);
  EXPECT_TRUE(contains(c.out, "NOT CLOSED")) << c.out;
  EXPECT_TRUE(contains(run({"lie", "check-closure", "sp", "--n", "2"}).out, "CLOSED (sp(4), dim 10"));

  CliResult u = run({"lie", "simple", "upper-sl", "--n", "4"});
  EXPECT_TRUE(contains(u.out, "NOT SIMPLE")) << u.out;
  EXPECT_TRUE(contains(u.out, "witness: Lie ideal of dim 6")) << u.out;

  EXPECT_TRUE(contains(run({"lie", "derived", "upper-sl", "--n", "3"}).out, "dim 3 of 5"));
  EXPECT_TRUE(contains(run({"lie", "killing", "sl", "--n", "3"}).out, "rank 8 of 8 (nondegenerate)"));
  EXPECT_TRUE(contains(run({"lie", "ideal-gen", "sl", "--n", "2", "--basis-element", "0"}).out, "dim 3 of 3"));
  EXPECT_TRUE(contains(run({"lie", "simple", "shift", "--n", "5", "--weights", "pow:1"}).out, "ABELIAN"));
}

TEST(Cli, AlgebraFileRoundTrip) {
  std::string path = temp_path("sp4.json");
  CliResult b = run({"lie", "build", "sp", "--n", "2", "-o", path});
  ASSERT_EQ(b.code, 0) << b.err;
  EXPECT_TRUE(b.out.empty());
  CliResult s = run({"lie", "simple", "--file", path});
  EXPECT_EQ(s.code, 0) << s.err;
  EXPECT_TRUE(contains(s.out, "SIMPLE")) << s.out;
  CliResult again = run({"lie", "build", "--file", path});
  EXPECT_EQ(again.out, run({"lie", "build", "sp", "--n", "2"}).out);
}

TEST(Cli, WitnessBuildVerify) {
  std::string path = temp_path("cert.json");
  CliResult b = run({"witness", "build", "--weights", "pow:1", "--pool", "pow:2", "--trunc", "16", "-o", path});
  ASSERT_EQ(b.code, 0) << b.err;
  CliResult v = run({"witness", "verify", "--file", path});
  EXPECT_EQ(v.code, 0);
  EXPECT_TRUE(contains(v.out, "VERIFIED")) << v.out;

  Json j = Json::parse(std::ifstream(path));
  j["commutator"]["value"] = "1/5";
  std::string bad = temp_path("cert-bad.json");
  write_text(bad, j.dump(2));
  CliResult r = run({"witness", "verify", "--file", bad});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "REJECTED (obligation (b)")) << r.out;

  CliResult refused = run({"witness", "build", "--weights", "exp:1/2", "--pool", "pow:1"});
  EXPECT_EQ(refused.code, 2);
  EXPECT_TRUE(contains(refused.err, "soft")) << refused.err;
}

TEST(Cli, ExitCodes) {
  CliResult bad = run({"seq", "signature", "pow:x"});
  EXPECT_EQ(bad.code, 2);
  EXPECT_TRUE(contains(bad.err, "at byte 4")) << bad.err;
  EXPECT_EQ(run({"seq", "signature", "exp:2"}).code, 2);
  EXPECT_EQ(run({"lie", "simple", "nonsense", "--n", "2"}).code, 2);
  EXPECT_EQ(run({"lie", "simple", "sp-literal", "--n", "2"}).code, 2);
  EXPECT_EQ(run({"lie", "simple", "--file", "/nonexistent/a.json"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"seq", "compare", "pow:1", "pow:2", "--mode", "Q"}).code, 2);
}

TEST(Cli, StrictMode) {
  EXPECT_EQ(run({"seq", "compare", "pow:1", "pow:2", "--strict"}).code, 0);
  CliResult n = run({"seq", "compare", "pow:1", "pow:2", "--numeric", "--nmax", "4096", "--strict"});
  EXPECT_EQ(n.code, 3);
  EXPECT_TRUE(contains(n.out, "numeric probe:")) << n.out;
  EXPECT_EQ(run({"seq", "compare", "pow:1", "pow:2", "--numeric", "--nmax", "4096"}).code, 0);
}

TEST(Cli, HelpExitsZero) {
  CliResult h = run({"--help"});
  EXPECT_EQ(h.code, 0);
  EXPECT_TRUE(contains(h.out, "seq")) << h.out;
  EXPECT_TRUE(contains(h.out, "witness")) << h.out;
}

TEST(Cli, JsonIsByteIdenticalAcrossRuns) {
  for (const std::vector<std::string>& cmd :
       {std::vector<std::string>{"ideal", "report", "exp:9/10", "--json"},
        std::vector<std::string>{"lie", "simple", "sp", "--n", "2", "--json", "--seed", "7"},
        std::vector<std::string>{"seq", "compare", "pow:1", "amp:3;pow:1", "--numeric", "--json"}}) {
    CliResult a = run(cmd), b = run(cmd);
    EXPECT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
    EXPECT_TRUE(Json::accept(a.out));
  }
}

TEST(Cli, ArgvRoundTripReproducesReport) {
  CliResult a = run({"ideal", "member", "--json", "exp:9/10", "exp:1/2"});
  Json j = Json::parse(a.out);
  EXPECT_EQ(j["schema_version"], 1);
  std::vector<std::string> argv = j["argv"].get<std::vector<std::string>>();
  EXPECT_EQ(run(argv).out, a.out);
  EXPECT_EQ(j["verdict"]["index"], 7);
}

TEST(Cli, OutputFlagIsNotRecordedInArgv) {
  std::string path = temp_path("report.json");
  ASSERT_EQ(run({"ideal", "soft", "pow:1", "--json", "-o", path}).code, 0);
  Json j = Json::parse(std::ifstream(path));
  EXPECT_EQ(j["argv"], Json({"ideal", "soft", "pow:1", "--json"}));
}

TEST(Cli, EnvironmentNmax) {
  ::setenv("IDEALKIT_NMAX", "2048", 1);
  CliResult a = run({"seq", "compare", "pow:1", "pow:2", "--numeric", "--json"});
  ::setenv("IDEALKIT_NMAX", "lots", 1);
  CliResult b = run({"seq", "signature", "pow:1"});
  ::unsetenv("IDEALKIT_NMAX");
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(Json::parse(a.out)["numeric"]["numeric"]["n_max"], 2048);
  EXPECT_EQ(b.code, 2);
}

TEST(Cli, BatchPreservesOrderAcrossJobCounts) {
  std::string path = temp_path("batch.txt");
  write_text(path,
             "# comment\n"
             "ideal soft pow:1\n"
             "ideal soft exp:1/2\n"
             "lie simple sl --n 3 --seed 3\n"
             "seq compare pow:2 pow:1 --mode o\n"
             "seq signature pow:x\n");
  CliResult one = run({"batch", "--file", path, "--jobs", "1", "--json"});
  CliResult four = run({"batch", "--file", path, "--jobs", "4", "--json"});
  EXPECT_EQ(one.out, four.out);
  EXPECT_EQ(one.code, 2);
  Json j = Json::parse(one.out);
  ASSERT_EQ(j.size(), 5u);
  EXPECT_EQ(j[0]["argv"][2], "pow:1");
  EXPECT_EQ(j[4]["exit_code"], 2);
  CliResult text = run({"batch", "--file", path, "--jobs", "2"});
  EXPECT_TRUE(contains(text.out, "## ideal soft pow:1 [exit 0]")) << text.out;
}
