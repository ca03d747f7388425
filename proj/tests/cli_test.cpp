#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "wdro/io.hpp"

namespace wdro {
namespace {

namespace fs = std::filesystem;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "wdro");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("wdro_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    unsetenv("WDRO_OUTPUT_DIR");
  }
  void TearDown() override {
    unsetenv("WDRO_OUTPUT_DIR");
    fs::remove_all(dir_);
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string generate(const std::string& name, const std::string& q, const std::string& support = "box") {
    const auto r = run({"gen", "--n", "8", "--N", "4", "--seed", "3", "--alpha", "0.5", "--epsilon", "0.1", "--q", q,
                        "--support", support, "-o", path(name)});
    EXPECT_EQ(r.code, 0) << r.err;
    return path(name);
  }

  fs::path dir_;
};

double objective_of(const std::string& json_text) { return Json::parse(json_text)["result"]["objective"]; }

TEST_F(Cli, ZeroRadiusMatchesTheCvarSolve) {
  const auto inst = generate("i.json", "inf");
  const auto cvar = run({"solve-cvar", inst});
  ASSERT_EQ(cvar.code, 0) << cvar.err;
  for (const std::string method : {"auto", "rowgen"}) {
    const auto distr = run({"solve-distr", inst, "--epsilon", "0", "--method", method});
    ASSERT_EQ(distr.code, 0) << distr.err;
    EXPECT_NEAR(objective_of(distr.out), objective_of(cvar.out), 1e-9) << method;
  }
  const auto unrestricted = generate("u.json", "2", "unrestricted");
  EXPECT_NEAR(objective_of(run({"solve-distr", unrestricted, "--epsilon", "0"}).out),
              objective_of(run({"solve-cvar", unrestricted}).out), 1e-9);
}

TEST_F(Cli, CertificateValueMatchesTheSolve) {
  const std::vector<std::pair<std::string, std::string>> cases = {{"1", "box"}, {"inf", "box"}, {"2", "unrestricted"}};
  for (const auto& [q, support] : cases) {
    const auto inst = generate("i" + q + ".json", q, support);
    const auto solved = path("s" + q + ".json");
    const auto s = run({"solve-distr", inst, "-o", solved});
    ASSERT_EQ(s.code, 0) << s.err;
    const Json solution = read_json_file(solved);
    const auto w = run({"worst-dist", inst, "--solution", solved});
    ASSERT_EQ(w.code, 0) << w.err;
    EXPECT_NEAR(Json::parse(w.out)["certificate"]["value"].get<double>(),
                solution["result"]["objective"].get<double>(), 1e-6)
        << q << " " << solution["method"];
  }
}

TEST_F(Cli, AutoSelectionFollowsTheSupport) {
  EXPECT_EQ(Json::parse(run({"solve-distr", generate("a.json", "1")}).out)["method"], "two-solve");
  EXPECT_EQ(Json::parse(run({"solve-distr", generate("b.json", "inf")}).out)["method"], "rowgen");
  EXPECT_EQ(Json::parse(run({"solve-distr", generate("c.json", "inf", "unrestricted")}).out)["method"], "thm4");
  const auto forced = run({"solve-distr", generate("d.json", "inf"), "--method", "two-solve"});
  EXPECT_EQ(forced.code, 1);
}

TEST_F(Cli, ApproxAndCustomDistortion) {
  const auto inst = generate("i.json", "inf");
  const auto a = run({"approx", inst});
  ASSERT_EQ(a.code, 0) << a.err;
  const Json out = Json::parse(a.out);
  EXPECT_TRUE(out["certified"].get<bool>());
  EXPECT_GE(out["certified_ratio"].get<double>(), 1.0);
  const auto none = run({"approx", inst, "--c", "inf"});
  ASSERT_EQ(none.code, 0) << none.err;
  EXPECT_NEAR(objective_of(none.out), objective_of(run({"solve-cvar", inst}).out), 1e-9);
}

TEST_F(Cli, ReduceWritesAConsistentInstance) {
  const Json rs = {{"n", 4},
                   {"feasible_set", {{"tag", "rep_selection"}, {"groups", {{0, 1}, {2, 3}}}}},
                   {"samples", {{1, 2, 3, 4}, {4, 3, 2, 1}}},
                   {"alpha", 0.5}};
  write_json_file(path("rs.json"), rs);
  const auto r = run({"reduce", path("rs.json"), "-o", path("reduced.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json reduced = read_json_file(path("reduced.json"));
  const int l = reduced["reduction"]["l"];
  const int N = reduced["reduction"]["N"];
  const double alpha = reduced["alpha"];
  EXPECT_LT((l - 1.0) / N, alpha);
  EXPECT_LE(alpha, static_cast<double>(l) / N + 1e-12);
  EXPECT_EQ(run({"solve-cvar", path("reduced.json")}).code, 0);
  EXPECT_EQ(run({"reduce", generate("k.json", "1")}).code, 1);
}

TEST_F(Cli, ExperimentCsvIsReproducibleAcrossJobCounts) {
  const std::vector<std::string> common = {"experiment", "exp1", "--seed", "7", "--n", "10", "--N", "5", "--samples",
                                           "2", "--alpha", "0.2", "--mc-draws", "500", "--epsilons", "0,0.05,0.1",
                                           "--no-plots"};
  auto with = [&](std::vector<std::string> pre, const std::string& out) {
    std::vector<std::string> args = pre;
    args.insert(args.end(), common.begin(), common.end());
    args.push_back("--out-dir");
    args.push_back(out);
    return run(args);
  };
  const auto a = with({}, path("a"));
  ASSERT_EQ(a.code, 0) << a.err;
  const auto b = with({"--jobs", "1"}, path("b"));
  ASSERT_EQ(b.code, 0) << b.err;
  const std::string csv_a = slurp(fs::path(path("a")) / "exp1_seed7.csv");
  EXPECT_FALSE(csv_a.empty());
  EXPECT_EQ(csv_a, slurp(fs::path(path("b")) / "exp1_seed7.csv"));
  EXPECT_EQ(std::count(csv_a.begin(), csv_a.end(), '\n'), 1 + 2 * 3 * 3);
}

TEST_F(Cli, OutputDirectoryFromTheEnvironment) {
  setenv("WDRO_OUTPUT_DIR", dir_.c_str(), 1);
  const auto r = run({"gen", "--n", "5", "--N", "2", "-o", "nested/inst.json"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(dir_ / "nested" / "inst.json"));
  const auto e = run({"experiment", "exp2", "--n", "6", "--N", "2", "--samples", "1", "--mc-draws", "200",
                      "--epsilons", "0.5"});
  ASSERT_EQ(e.code, 0) << e.err;
  EXPECT_TRUE(fs::exists(dir_ / "exp2_seed1.csv"));
  EXPECT_TRUE(fs::exists(dir_ / "exp2_seed1_plots" / "aggregate.svg"));
}

TEST_F(Cli, ExitCodes) {
  EXPECT_EQ(run({"--help"}).code, 0);
  const auto unknown = run({"solve-cvar", "--frobnicate"});
  EXPECT_EQ(unknown.code, 1);
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"solve-cvar", path("missing.json")}).code, 1);
  const auto inst = generate("i.json", "inf");
  EXPECT_EQ(run({"solve-cvar", inst, "--alpha", "1.5"}).code, 1);
  EXPECT_EQ(run({"worst-dist", inst, "--x", "1,0"}).code, 1);
  EXPECT_EQ(run({"worst-dist", inst}).code, 1);
  EXPECT_EQ(run({"experiment", "exp3"}).code, 1);
  std::ofstream(path("bad.json")) << "{not json";
  EXPECT_EQ(run({"solve-cvar", path("bad.json")}).code, 1);
  EXPECT_EQ(run({"--jobs", "0", "solve-cvar", inst}).code, 1);
}

}  // namespace
}  // namespace wdro
