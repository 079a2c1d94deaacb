#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "feedback/estimation.hpp"
#include "feedback/event_log.hpp"
#include "feedback/hypothesis.hpp"
#include "feedback/model.hpp"
#include "feedback/policy.hpp"
#include "feedback/simulation.hpp"

namespace feedback::io {

using Json = nlohmann::ordered_json;

/// Dimensions to assume when a log does not mention every topic / follower.
struct LogShape {
  std::size_t min_topics = 0;
  std::size_t min_followers = 0;
};

/// Parses line-delimited event records:
///   {"t": int, "kind": "own_post"|"external", "topic": int,
///    "labels": {"<follower_id>": 0|1, ...}}
/// Blank lines are skipped. Throws ParseError (with the 1-based line number)
/// on malformed records and OrderingError when timestamps decrease.
FeedbackLog parse_event_log(std::istream& in, LogShape shape = {});
FeedbackLog parse_event_log(const std::filesystem::path& path, LogShape shape = {});

/// Canonical form: one compact object per line, keys in schema order,
/// followers in increasing id order.
void write_event_log(std::ostream& out, const FeedbackLog& log);
std::string event_log_string(const FeedbackLog& log);

Json to_json(const PreferenceScenario& scenario);
PreferenceScenario scenario_from_json(const Json& j);

Json to_json(const Trajectory& trajectory);
Json to_json(const EstimationResult& result);
/// One JSON-lines record: {user, llr, dof, p_value, verdicts}.
Json to_json(const TestReport& report);
Json to_json(const CohortSummary& summary);

/// CSV with header `t,mean_cumulative_regret,stderr`, t starting at 1.
void write_regret_csv(std::ostream& out, const RegretTrace& trace);

/// Hex digest of the compact dump of `config`.
std::string config_digest(const Json& config);

}  // namespace feedback::io
