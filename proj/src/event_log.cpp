#include "feedback/event_log.hpp"

#include <string>

namespace feedback {

std::string_view to_string(EventKind kind) {
  return kind == EventKind::OwnPost ? "own_post" : "external";
}

std::size_t FeedbackLog::own_post_count() const {
  std::size_t n = 0;
  for (const auto& e : events) n += e.kind == EventKind::OwnPost ? 1 : 0;
  return n;
}

void FeedbackLog::validate() const {
  std::int64_t last = INT64_MIN;
  for (std::size_t i = 0; i < events.size(); ++i) {
    const auto& e = events[i];
    if (e.t < last) {
      throw OrderingError(i + 1, "timestamp " + std::to_string(e.t) + " precedes " +
                                     std::to_string(last));
    }
    last = e.t;
    if (e.topic.index >= topic_count) {
      throw StructuralError("event " + std::to_string(i + 1) + ": topic out of range");
    }
    if (e.kind == EventKind::External && e.labels.size() != 1) {
      throw StructuralError("event " + std::to_string(i + 1) +
                            ": external events carry exactly one label");
    }
    for (std::size_t j = 0; j < e.labels.size(); ++j) {
      const auto [v, label] = e.labels[j];
      if (v >= follower_count) {
        throw StructuralError("event " + std::to_string(i + 1) + ": follower out of range");
      }
      if (label != 0 && label != 1) {
        throw StructuralError("event " + std::to_string(i + 1) + ": label must be 0 or 1");
      }
      if (j > 0 && e.labels[j - 1].first >= v) {
        throw StructuralError("event " + std::to_string(i + 1) +
                              ": follower labels must be unique and sorted");
      }
    }
  }
}

FeedbackLog to_feedback_log(const Trajectory& trajectory) {
  FeedbackLog log;
  log.topic_count = trajectory.topic_count;
  log.follower_count = trajectory.follower_count;
  for (std::size_t step = 0; step < trajectory.steps(); ++step) {
    const auto t = static_cast<std::int64_t>(step + 1);
    FeedbackEvent post{t, EventKind::OwnPost, trajectory.topics[step], {}};
    const auto& own = trajectory.own_feedback[step];
    for (std::size_t v = 0; v < own.size(); ++v) post.labels.emplace_back(v, own[v]);
    log.events.push_back(std::move(post));
    for (const auto& ext : trajectory.external_feedback[step]) {
      log.events.push_back({t, EventKind::External, ext.topic, {{ext.follower, ext.label}}});
    }
  }
  return log;
}

}  // namespace feedback
