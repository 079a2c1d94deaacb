#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "feedback/error.hpp"
#include "feedback/estimation.hpp"
#include "feedback/io.hpp"
#include "feedback/simulation.hpp"

using namespace feedback;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

FeedbackLog parse(const std::string& text) {
  std::istringstream in(text);
  return io::parse_event_log(in);
}

std::size_t error_line(const std::string& text) {
  try {
    parse(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST(EventLog, EmptyInputGivesEmptyLog) {
  const FeedbackLog log = parse("");
  EXPECT_TRUE(log.events.empty());
  EXPECT_EQ(log.topic_count, 0u);
  EXPECT_EQ(parse("\n  \n").events.size(), 0u);
}

TEST(EventLog, CanonicalFileRoundTripsByteForByte) {
  const std::string path = std::string(FEEDBACK_TEST_DATA_DIR) + "/canonical.jsonl";
  const std::string text = read_file(path);
  const FeedbackLog log = io::parse_event_log(std::filesystem::path(path));
  EXPECT_EQ(log.events.size(), 6u);
  EXPECT_EQ(log.topic_count, 3u);
  EXPECT_EQ(log.follower_count, 3u);
  EXPECT_EQ(log.own_post_count(), 3u);
  EXPECT_EQ(io::event_log_string(log), text);
}

TEST(EventLog, NonCanonicalInputIsNormalized) {
  const FeedbackLog log =
      parse("{\"labels\": {\"3\": 1, \"1\": 0}, \"topic\": 0, \"kind\": \"own_post\", \"t\": 5}\r\n");
  EXPECT_EQ(io::event_log_string(log),
            "{\"t\":5,\"kind\":\"own_post\",\"topic\":0,\"labels\":{\"1\":0,\"3\":1}}\n");
}

TEST(EventLog, MalformedLinesReportLineNumbers) {
  const std::string good = "{\"t\":1,\"kind\":\"own_post\",\"topic\":0,\"labels\":{}}\n";
  EXPECT_EQ(error_line(good + "not json\n"), 2u);
  EXPECT_EQ(error_line(good + "\n{\"t\":2,\"kind\":\"repost\",\"topic\":0,\"labels\":{}}\n"), 3u);
  EXPECT_EQ(error_line("{\"t\":1,\"kind\":\"own_post\",\"topic\":-1,\"labels\":{}}\n"), 1u);
  EXPECT_EQ(error_line("{\"t\":1,\"kind\":\"own_post\",\"topic\":0,\"labels\":{\"a\":1}}\n"), 1u);
  EXPECT_EQ(error_line("{\"t\":1,\"kind\":\"own_post\",\"topic\":0,\"labels\":{\"01\":1}}\n"), 1u);
  EXPECT_EQ(error_line("{\"t\":1,\"kind\":\"own_post\",\"topic\":0,\"labels\":{\"0\":2}}\n"), 1u);
  EXPECT_EQ(error_line("{\"t\":1,\"kind\":\"external\",\"topic\":0,\"labels\":{}}\n"), 1u);
  EXPECT_EQ(
      error_line("{\"t\":1,\"kind\":\"external\",\"topic\":0,\"labels\":{\"0\":1,\"1\":0}}\n"), 1u);
  EXPECT_EQ(error_line("{\"t\":1,\"kind\":\"own_post\",\"topic\":0}\n"), 1u);
  EXPECT_EQ(error_line("{\"t\":1.5,\"kind\":\"own_post\",\"topic\":0,\"labels\":{}}\n"), 1u);
  EXPECT_EQ(error_line("{\"t\":1,\"kind\":\"own_post\",\"topic\":0,\"labels\":{},\"x\":1}\n"), 1u);
  EXPECT_EQ(error_line("[1,2]\n"), 1u);
}

TEST(EventLog, DecreasingTimestampIsOrderingError) {
  const std::string text =
      "{\"t\":2,\"kind\":\"own_post\",\"topic\":0,\"labels\":{}}\n"
      "{\"t\":1,\"kind\":\"own_post\",\"topic\":0,\"labels\":{}}\n";
  try {
    parse(text);
    FAIL() << "expected an ordering error";
  } catch (const OrderingError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(EventLog, MissingFileIsAnError) {
  EXPECT_THROW(io::parse_event_log(std::filesystem::path("/nonexistent/log.jsonl")), Error);
}

TEST(EventLog, ShapeSetsMinimumDimensions) {
  std::istringstream in("{\"t\":1,\"kind\":\"own_post\",\"topic\":0,\"labels\":{\"0\":1}}\n");
  const FeedbackLog log = io::parse_event_log(in, {5, 4});
  EXPECT_EQ(log.topic_count, 5u);
  EXPECT_EQ(log.follower_count, 4u);
}

TEST(EventLog, SimulatedTrajectoryRoundTripsToSameTables) {
  ScenarioGenConfig g;
  g.topics = 4;
  g.followers = 3;
  g.horizon = 150;
  g.mu_bar = 1.0;
  Rng rng(81);
  const auto s = sample_scenario(g, rng);
  PolicyConfig p;
  p.estimator = EstimatorKind::PosteriorSample;
  p.use_external_feedback = true;
  const Trajectory tr = run_episode(s, p, rng);
  const FeedbackLog log = to_feedback_log(tr);
  log.validate();

  std::istringstream in(io::event_log_string(log));
  const FeedbackLog back = io::parse_event_log(in, {tr.topic_count, tr.follower_count});
  EXPECT_EQ(back, log);

  // The final table rebuilt from the parsed log equals the simulator's.
  BetaPosteriorTable table(p.prior, tr.topic_count, tr.follower_count);
  for (const auto& e : back.events) {
    for (const auto& [v, label] : e.labels) table.record(e.topic, v, label);
  }
  EXPECT_EQ(table, replay_table(tr, p.prior));
}

TEST(EventLog, ReplayMatchesSimulatorEstimates) {
  // Record the MAP estimates the simulated user acted on and compare with the
  // replay of the exported log.
  ScenarioGenConfig g;
  g.topics = 3;
  g.followers = 2;
  g.horizon = 80;
  g.mu_bar = 0.8;
  Rng rng(82);
  const auto s = sample_scenario(g, rng);
  PolicyConfig p;
  p.use_external_feedback = true;

  // Labels of step t reach the table only after the snapshot for step t.
  struct Recorder final : EpisodeObserver {
    Recorder(BetaPrior prior, std::size_t k, std::size_t n) : table(prior, k, n) {}
    void on_post(std::size_t, TopicId c) override {
      seen.push_back(map_estimates(table));
      last = c;
    }
    void on_own_label(std::size_t, std::size_t v, int label) override {
      table.record(last, v, label);
    }
    void on_external_label(std::size_t, const ExternalLabel& l) override {
      table.record(l.topic, l.follower, l.label);
    }
    BetaPosteriorTable table;
    TopicId last{};
    std::vector<Matrix> seen;
  } rec(p.prior, 3, 2);
  Rng r1(5);
  simulate_episode(s, p, r1, rec);

  Rng r2(5);
  const Trajectory tr = run_episode(s, p, r2);
  const Replay replay = replay_estimates(to_feedback_log(tr), p.prior);
  ASSERT_EQ(replay.steps.size(), rec.seen.size());
  for (std::size_t i = 0; i < rec.seen.size(); ++i) {
    EXPECT_EQ(replay.steps[i].q_hat, rec.seen[i]) << "step " << i;
    EXPECT_EQ(replay.steps[i].observed, tr.topics[i]);
  }
}

TEST(EventLog, ValidateRejectsBadLogs) {
  FeedbackLog log;
  log.topic_count = 2;
  log.follower_count = 2;
  log.events.push_back({3, EventKind::OwnPost, TopicId{0}, {}});
  log.events.push_back({2, EventKind::OwnPost, TopicId{0}, {}});
  EXPECT_THROW(log.validate(), OrderingError);
  log.events.pop_back();
  log.events.push_back({4, EventKind::OwnPost, TopicId{5}, {}});
  EXPECT_THROW(log.validate(), StructuralError);
}

TEST(EventLog, ScenarioJsonRoundTrip) {
  ScenarioGenConfig g;
  g.topics = 3;
  g.followers = 2;
  g.mu_bar = 1.0;
  Rng rng(83);
  const auto s = sample_scenario(g, rng);
  const auto back = io::scenario_from_json(io::to_json(s));
  EXPECT_EQ(back.weights(), s.weights());
  EXPECT_EQ(back.q().values(), s.q().values());
  EXPECT_EQ(back.external_rates(), s.external_rates());
  EXPECT_EQ(back.horizon(), s.horizon());
  EXPECT_THROW(io::scenario_from_json(io::Json::object()), StructuralError);
}

TEST(EventLog, RegretCsvSchema) {
  RegretTrace t;
  t.cumulative_regret = {0.5, 1.25};
  t.standard_error = {0.0, 0.125};
  std::ostringstream os;
  io::write_regret_csv(os, t);
  EXPECT_EQ(os.str(), "t,mean_cumulative_regret,stderr\n1,0.5,0\n2,1.25,0.125\n");
}
