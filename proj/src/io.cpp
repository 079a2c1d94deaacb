#include "feedback/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace feedback::io {

namespace {

std::size_t parse_follower_key(const std::string& key, std::size_t line) {
  std::size_t v = 0;
  const char* begin = key.data();
  const char* end = key.data() + key.size();
  const auto [ptr, ec] = std::from_chars(begin, end, v);
  if (key.empty() || ec != std::errc{} || ptr != end || (key.size() > 1 && key[0] == '0')) {
    throw ParseError(line, "follower id '" + key + "' is not a canonical nonnegative integer");
  }
  return v;
}

FeedbackEvent parse_record(const std::string& text, std::size_t line) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(line, std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError(line, "record is not a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (key != "t" && key != "kind" && key != "topic" && key != "labels") {
      throw ParseError(line, "unexpected key '" + key + "'");
    }
  }
  if (!j.contains("t") || !j["t"].is_number_integer()) {
    throw ParseError(line, "'t' must be an integer");
  }
  if (!j.contains("kind") || !j["kind"].is_string()) {
    throw ParseError(line, "'kind' must be a string");
  }
  if (!j.contains("topic") || !j["topic"].is_number_integer() || j["topic"].get<long long>() < 0) {
    throw ParseError(line, "'topic' must be a nonnegative integer");
  }
  if (!j.contains("labels") || !j["labels"].is_object()) {
    throw ParseError(line, "'labels' must be an object");
  }

  FeedbackEvent e;
  e.t = j["t"].get<std::int64_t>();
  const auto kind = j["kind"].get<std::string>();
  if (kind == "own_post") {
    e.kind = EventKind::OwnPost;
  } else if (kind == "external") {
    e.kind = EventKind::External;
  } else {
    throw ParseError(line, "unknown kind '" + kind + "'");
  }
  e.topic = TopicId{j["topic"].get<std::size_t>()};
  for (const auto& [key, value] : j["labels"].items()) {
    const std::size_t v = parse_follower_key(key, line);
    if (!value.is_number_integer() || (value.get<long long>() != 0 && value.get<long long>() != 1)) {
      throw ParseError(line, "label for follower " + key + " must be 0 or 1");
    }
    e.labels.emplace_back(v, value.get<int>());
  }
  std::sort(e.labels.begin(), e.labels.end());
  for (std::size_t i = 1; i < e.labels.size(); ++i) {
    if (e.labels[i].first == e.labels[i - 1].first) {
      throw ParseError(line, "duplicate follower id");
    }
  }
  if (e.kind == EventKind::External && e.labels.size() != 1) {
    throw ParseError(line, "external records need exactly one follower label");
  }
  return e;
}

Json matrix_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (double v : m.row(r)) row.push_back(v);
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j, const char* name) {
  if (!j.is_array()) throw StructuralError(std::string(name) + " must be an array of rows");
  std::vector<std::vector<double>> rows;
  for (const auto& row : j) rows.push_back(row.get<std::vector<double>>());
  return Matrix::from_rows(rows);
}

}  // namespace

FeedbackLog parse_event_log(std::istream& in, LogShape shape) {
  FeedbackLog log;
  log.topic_count = shape.min_topics;
  log.follower_count = shape.min_followers;
  std::string text;
  std::size_t line = 0;
  std::int64_t last = 0;
  bool any = false;
  while (std::getline(in, text)) {
    ++line;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    if (text.find_first_not_of(" \t") == std::string::npos) continue;
    FeedbackEvent e = parse_record(text, line);
    if (any && e.t < last) {
      throw OrderingError(line, "timestamp " + std::to_string(e.t) +
                                    " is earlier than the previous record (" +
                                    std::to_string(last) + ")");
    }
    any = true;
    last = e.t;
    log.topic_count = std::max(log.topic_count, e.topic.index + 1);
    for (const auto& [v, _] : e.labels) log.follower_count = std::max(log.follower_count, v + 1);
    log.events.push_back(std::move(e));
  }
  return log;
}

FeedbackLog parse_event_log(const std::filesystem::path& path, LogShape shape) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open event log '" + path.string() + "'");
  return parse_event_log(in, shape);
}

void write_event_log(std::ostream& out, const FeedbackLog& log) {
  for (const auto& e : log.events) {
    Json j;
    j["t"] = e.t;
    j["kind"] = std::string(to_string(e.kind));
    j["topic"] = e.topic.index;
    Json labels = Json::object();
    auto sorted = e.labels;
    std::sort(sorted.begin(), sorted.end());
    for (const auto& [v, label] : sorted) labels[std::to_string(v)] = label;
    j["labels"] = std::move(labels);
    out << j.dump() << '\n';
  }
}

std::string event_log_string(const FeedbackLog& log) {
  std::ostringstream os;
  write_event_log(os, log);
  return os.str();
}

Json to_json(const PreferenceScenario& scenario) {
  Json j;
  j["weights"]["followers"] = std::vector<double>(scenario.weights().followers().begin(),
                                                  scenario.weights().followers().end());
  j["weights"]["self"] = scenario.weights().self();
  j["q"] = matrix_json(scenario.q().values());
  j["x"] = std::vector<double>(scenario.x().values().begin(), scenario.x().values().end());
  j["mu"] = matrix_json(scenario.external_rates());
  j["horizon"] = scenario.horizon();
  return j;
}

PreferenceScenario scenario_from_json(const Json& j) {
  try {
    Matrix q = matrix_from_json(j.at("q"), "q");
    Matrix mu = j.contains("mu") ? matrix_from_json(j.at("mu"), "mu")
                                 : Matrix(q.rows(), q.cols(), 0.0);
    return PreferenceScenario(
        UtilityWeights(j.at("weights").at("followers").get<std::vector<double>>(),
                       j.at("weights").at("self").get<double>()),
        PreferenceMatrix(std::move(q)), OwnPreferences(j.at("x").get<std::vector<double>>()),
        std::move(mu), j.at("horizon").get<std::size_t>());
  } catch (const nlohmann::json::exception& e) {
    throw StructuralError(std::string("invalid scenario document: ") + e.what());
  }
}

Json to_json(const Trajectory& trajectory) {
  Json j;
  j["topic_count"] = trajectory.topic_count;
  j["follower_count"] = trajectory.follower_count;
  Json topics = Json::array();
  for (const auto& t : trajectory.topics) topics.push_back(t.index);
  j["topics"] = std::move(topics);
  Json own = Json::array();
  for (const auto& labels : trajectory.own_feedback) {
    own.push_back(std::vector<int>(labels.begin(), labels.end()));
  }
  j["own_feedback"] = std::move(own);
  Json ext = Json::array();
  for (const auto& step : trajectory.external_feedback) {
    Json s = Json::array();
    for (const auto& e : step) s.push_back(Json::array({e.topic.index, e.follower, e.label}));
    ext.push_back(std::move(s));
  }
  j["external_feedback"] = std::move(ext);
  return j;
}

Json to_json(const EstimationResult& result) {
  Json j;
  j["weights"]["followers"] = std::vector<double>(result.weights.followers().begin(),
                                                  result.weights.followers().end());
  j["weights"]["self"] = result.weights.self();
  j["x"] = result.x_hat;
  j["z"] = result.z_hat;
  j["objective"] = result.objective;
  j["iterations"] = result.iterations;
  j["converged"] = result.converged;
  j["x_identifiable"] = result.x_identifiable;
  return j;
}

namespace {

std::string level_key(double level) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", level);
  return buf;
}

}  // namespace

Json to_json(const TestReport& report) {
  Json j;
  j["user"] = report.user;
  j["llr"] = report.llr;
  j["dof"] = report.dof;
  j["p_value"] = report.p_value;
  Json verdicts = Json::object();
  for (const auto& v : report.reject_at) verdicts[level_key(v.level)] = v.reject;
  j["verdicts"] = std::move(verdicts);
  return j;
}

Json to_json(const CohortSummary& summary) {
  Json j;
  j["total_users"] = summary.total_users;
  Json levels = Json::array();
  for (const auto& l : summary.levels) {
    levels.push_back({{"level", l.level}, {"rejected", l.rejected}, {"fraction", l.fraction}});
  }
  j["levels"] = std::move(levels);
  return j;
}

void write_regret_csv(std::ostream& out, const RegretTrace& trace) {
  out << "t,mean_cumulative_regret,stderr\n";
  char buf[96];
  for (std::size_t t = 0; t < trace.cumulative_regret.size(); ++t) {
    const double se = t < trace.standard_error.size() ? trace.standard_error[t] : 0.0;
    std::snprintf(buf, sizeof buf, "%zu,%.12g,%.12g\n", t + 1, trace.cumulative_regret[t], se);
    out << buf;
  }
}

std::string config_digest(const Json& config) { return digest_hex(config.dump()); }

}  // namespace feedback::io
