#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

#include "feedback/model.hpp"
#include "feedback/policy.hpp"

namespace feedback {

enum class EventKind { OwnPost, External };

std::string_view to_string(EventKind kind);

/// One observation in a user's history. An own post carries the labels of
/// (some or all of) the user's followers; an external event carries exactly
/// one (follower, label) pair for a story someone else posted.
struct FeedbackEvent {
  std::int64_t t = 0;
  EventKind kind = EventKind::OwnPost;
  TopicId topic;
  /// (follower, label) pairs sorted by follower.
  std::vector<std::pair<std::size_t, int>> labels;

  bool operator==(const FeedbackEvent&) const = default;
};

/// Time-ordered history of one user.
struct FeedbackLog {
  std::size_t topic_count = 0;
  std::size_t follower_count = 0;
  std::vector<FeedbackEvent> events;

  std::size_t own_post_count() const;
  /// Throws StructuralError / OrderingError when the invariants do not hold.
  void validate() const;

  bool operator==(const FeedbackLog&) const = default;
};

/// Event log of a simulated run. Step i of the trajectory becomes time i + 1:
/// the own post first, then the external labels observed during that step.
FeedbackLog to_feedback_log(const Trajectory& trajectory);

}  // namespace feedback
