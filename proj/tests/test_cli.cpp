#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "feedback/cli.hpp"
#include "feedback/io.hpp"

namespace fs = std::filesystem;
using feedback::run_command;
using feedback::io::Json;

namespace {

struct Result {
  int status;
  std::string out;
  std::string err;
};

Result run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int status = run_command(args, out, err);
  return {status, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / ("feedback_cli_" + std::string(info->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

void expect_self_describing(const Json& doc) {
  ASSERT_TRUE(doc.contains("config"));
  ASSERT_TRUE(doc.contains("config_digest"));
  EXPECT_EQ(doc["config_digest"], feedback::io::config_digest(doc["config"]));
  EXPECT_TRUE(doc["config"].contains("seed"));
}

}  // namespace

TEST_F(Cli, SimulateWritesLogAndSidecar) {
  const auto r = run({"simulate", "--K", "3", "--N", "2", "--T", "40", "--mu-bar", "1",
                      "--external", "on", "--seed", "5", "--out", path("u.jsonl"), "--trajectory",
                      path("u.traj.json")});
  ASSERT_EQ(r.status, 0) << r.err;
  const Json summary = Json::parse(r.out);
  expect_self_describing(summary);
  EXPECT_EQ(summary["posts"], 40);
  const Json meta = Json::parse(slurp(path("u.jsonl.meta.json")));
  expect_self_describing(meta);
  EXPECT_EQ(meta["config_digest"], summary["config_digest"]);
  const auto log = feedback::io::parse_event_log(fs::path(path("u.jsonl")));
  EXPECT_EQ(log.own_post_count(), 40u);
  const Json traj = Json::parse(slurp(path("u.traj.json")));
  EXPECT_EQ(traj["trajectory"]["topics"].size(), 40u);
}

TEST_F(Cli, SimulateIsReproducible) {
  for (const char* name : {"a.jsonl", "b.jsonl"}) {
    ASSERT_EQ(run({"simulate", "--K", "4", "--N", "3", "--T", "60", "--estimator", "posterior",
                   "--seed", "9", "--out", path(name)})
                  .status,
              0);
  }
  EXPECT_EQ(slurp(path("a.jsonl")), slurp(path("b.jsonl")));
}

TEST_F(Cli, SimulateFromScenarioFile) {
  ASSERT_EQ(run({"simulate", "--K", "3", "--N", "1", "--T", "10", "--seed", "1", "--out",
                 path("a.jsonl")})
                .status,
            0);
  const auto r = run({"simulate", "--scenario", path("a.jsonl.meta.json"), "--T", "25", "--seed",
                      "2", "--out", path("b.jsonl")});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(Json::parse(r.out)["posts"], 25);
}

TEST_F(Cli, RegretSerialAndParallelAreByteIdentical) {
  const std::vector<std::string> base{"regret", "--estimator", "posterior", "--external", "on",
                                      "--mu-bar", "1", "--K", "5", "--N", "3", "--T", "150",
                                      "--runs", "20", "--seed", "4"};
  auto serial = base;
  serial.insert(serial.end(), {"--threads", "1", "--out", path("s.csv")});
  auto parallel = base;
  parallel.insert(parallel.end(), {"--threads", "4", "--out", path("p.csv")});
  const auto a = run(serial);
  const auto b = run(parallel);
  ASSERT_EQ(a.status, 0) << a.err;
  ASSERT_EQ(b.status, 0) << b.err;
  EXPECT_EQ(slurp(path("s.csv")), slurp(path("p.csv")));
  Json ma = Json::parse(slurp(path("s.csv.meta.json")));
  Json mb = Json::parse(slurp(path("p.csv.meta.json")));
  expect_self_describing(ma);
  ma.erase("csv");
  mb.erase("csv");
  EXPECT_EQ(ma.dump(), mb.dump());
  const std::string csv = slurp(path("s.csv"));
  EXPECT_EQ(csv.rfind("t,mean_cumulative_regret,stderr\n", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 151);
}

TEST_F(Cli, RegretGridWritesEveryCell) {
  const auto r = run({"regret", "--grid", "mu-bar", "--T", "30", "--runs", "3", "--K", "4", "--N",
                      "2", "--seed", "1", "--out-dir", path("grid")});
  ASSERT_EQ(r.status, 0) << r.err;
  const Json summary = Json::parse(r.out);
  EXPECT_EQ(summary["cells"].size(), 6u);
  for (const char* name : {"mu_bar_point_mu0.5.csv", "mu_bar_posterior_mu2.csv"}) {
    EXPECT_TRUE(fs::exists(dir_ / "grid" / name)) << name;
  }
  EXPECT_EQ(run({"regret", "--grid", "topics", "--T", "20", "--runs", "2", "--out-dir",
                 path("grid1")})
                .status,
            0);
  EXPECT_TRUE(fs::exists(dir_ / "grid1" / "topics_posterior_K30.csv"));
}

TEST_F(Cli, EstimateWithEachSolver) {
  ASSERT_EQ(run({"simulate", "--K", "3", "--N", "2", "--T", "20", "--lambda", "10", "--seed",
                 "1", "--out", path("u.jsonl")})
                .status,
            0);
  double objective[2] = {0, 0};
  int i = 0;
  for (const char* solver : {"lp", "subgradient"}) {
    const auto r = run({"estimate", "--log", path("u.jsonl"), "--solver", solver});
    ASSERT_EQ(r.status, 0) << r.err;
    const Json doc = Json::parse(r.out);
    expect_self_describing(doc);
    EXPECT_EQ(doc["config"]["solver"], solver);
    objective[i++] = doc["result"]["objective"].get<double>();
  }
  EXPECT_LE(objective[0], objective[1] + 1e-9);
  const auto mle = run({"estimate", "--log", path("u.jsonl"), "--solver", "mle", "--out",
                        path("fit.json")});
  ASSERT_EQ(mle.status, 0) << mle.err;
  EXPECT_LE(Json::parse(slurp(path("fit.json")))["result"]["objective"].get<double>(), 0.0);
  const auto post = run({"estimate", "--log", path("u.jsonl"), "--variant", "posterior",
                         "--samples", "3", "--seed", "2"});
  ASSERT_EQ(post.status, 0) << post.err;
  EXPECT_EQ(post.out, run({"estimate", "--log", path("u.jsonl"), "--variant", "posterior",
                           "--samples", "3", "--seed", "2"})
                          .out);
}

TEST_F(Cli, TestCommandCohort) {
  std::vector<std::string> args{"test"};
  for (int u = 0; u < 3; ++u) {
    const std::string name = path("user" + std::to_string(u) + ".jsonl");
    ASSERT_EQ(run({"simulate", "--K", "3", "--N", "1", "--T", "60", "--lambda", "10", "--seed",
                   std::to_string(u), "--out", name})
                  .status,
              0);
    args.insert(args.end(), {"--log", name});
  }
  auto serial = args;
  serial.insert(serial.end(), {"--threads", "1", "--summary-out", path("s1.json")});
  auto parallel = args;
  parallel.insert(parallel.end(), {"--threads", "3", "--summary-out", path("s2.json")});
  const auto a = run(serial);
  const auto b = run(parallel);
  ASSERT_EQ(a.status, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(slurp(path("s1.json")), slurp(path("s2.json")));
  std::istringstream lines(a.out);
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) {
    const Json rec = Json::parse(line);
    EXPECT_TRUE(rec.contains("p_value"));
    EXPECT_TRUE(rec.contains("verdicts"));
    ++count;
  }
  const Json summary = Json::parse(slurp(path("s1.json")));
  expect_self_describing(summary);
  EXPECT_EQ(summary["summary"]["total_users"].get<int>() + summary["skipped"].size(), 3u);
  EXPECT_EQ(count, summary["summary"]["total_users"].get<int>());
}

TEST_F(Cli, LockInWalkReport) {
  const auto r = run({"a1-walk", "--T", "100", "--runs", "40", "--seed", "7", "--threads", "2"});
  ASSERT_EQ(r.status, 0) << r.err;
  const Json doc = Json::parse(r.out);
  expect_self_describing(doc);
  EXPECT_NEAR(doc["mean_worse_fraction"].get<double>(),
              doc["mean_worse_posts"].get<double>() / 100.0, 1e-15);
  EXPECT_EQ(r.out, run({"a1-walk", "--T", "100", "--runs", "40", "--seed", "7", "--threads", "1"}).out);
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run({}).status, feedback::kExitUsage);
  EXPECT_EQ(run({"frobnicate"}).status, feedback::kExitUsage);
  EXPECT_EQ(run({"regret", "--bogus"}).status, feedback::kExitUsage);
  EXPECT_EQ(run({"regret", "--estimator", "mode", "--out", path("x.csv")}).status,
            feedback::kExitUsage);
  EXPECT_EQ(run({"regret", "--K", "0", "--out", path("x.csv")}).status, feedback::kExitUsage);
  EXPECT_EQ(run({"regret", "--grid", "fig9", "--out-dir", path("g")}).status,
            feedback::kExitUsage);
  EXPECT_EQ(run({"simulate", "--T", "5"}).status, feedback::kExitUsage);
  EXPECT_EQ(run({"estimate", "--log", path("u.jsonl"), "--solver", "newton"}).status,
            feedback::kExitUsage);
  EXPECT_EQ(run({"a1-walk", "--runs", "0"}).status, feedback::kExitUsage);
  EXPECT_EQ(run({"--help"}).status, feedback::kExitOk);
}

TEST_F(Cli, RuntimeErrors) {
  const auto missing = run({"estimate", "--log", path("missing.jsonl")});
  EXPECT_EQ(missing.status, feedback::kExitFailure);
  EXPECT_NE(missing.err.find("cannot open"), std::string::npos);
  std::ofstream(path("bad.jsonl")) << "{\"t\":1,\"kind\":\"own_post\",\"topic\":0,\"labels\":{}}\n"
                                   << "oops\n";
  const auto bad = run({"estimate", "--log", path("bad.jsonl")});
  EXPECT_EQ(bad.status, feedback::kExitFailure);
  EXPECT_NE(bad.err.find("line 2"), std::string::npos);
}
