#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "feedback/inference.hpp"
#include "feedback/model.hpp"
#include "feedback/random.hpp"

namespace feedback {

enum class EstimatorKind { PointEstimate, PosteriorSample };

std::string_view to_string(EstimatorKind kind);
/// Accepts "point" / "posterior" (and the enum spellings).
EstimatorKind parse_estimator(std::string_view text);

struct PolicyConfig {
  EstimatorKind estimator = EstimatorKind::PointEstimate;
  BetaPrior prior{};
  bool use_external_feedback = false;
  /// When set, topics are drawn from the softmax of the estimated scores at
  /// this temperature instead of taking the argmax. Used to generate logs for
  /// the estimation and testing code, whose likelihood is the softmax.
  std::optional<double> softmax_lambda;
};

/// One feedback label a follower gave to someone else's story.
struct ExternalLabel {
  TopicId topic;
  std::size_t follower = 0;
  int label = 0;

  bool operator==(const ExternalLabel&) const = default;
};

/// Everything one simulated run produced. Step t (0-based here, time t + 1
/// in event logs) posts topics[t], receives own_feedback[t][v] from every
/// follower and observes external_feedback[t] afterwards.
struct Trajectory {
  std::size_t topic_count = 0;
  std::size_t follower_count = 0;
  std::vector<TopicId> topics;
  std::vector<std::vector<std::uint8_t>> own_feedback;
  std::vector<std::vector<ExternalLabel>> external_feedback;

  std::size_t steps() const noexcept { return topics.size(); }
  bool operator==(const Trajectory&) const = default;
};

/// Rebuilds the posterior table the episode ended with.
BetaPosteriorTable replay_table(const Trajectory& trajectory, BetaPrior prior);

/// Estimated scores sum_v a_v qhat_cv + a_u x_c for the chosen estimator.
std::vector<double> estimated_scores(const BetaPosteriorTable& table,
                                     const UtilityWeights& weights,
                                     const OwnPreferences& x, EstimatorKind estimator,
                                     Rng& rng);

/// Argmax of the estimated scores (lowest index wins ties).
TopicId choose_topic(const BetaPosteriorTable& table, const UtilityWeights& weights,
                     const OwnPreferences& x, EstimatorKind estimator, Rng& rng);

/// Receives each step of an episode as it happens.
class EpisodeObserver {
 public:
  virtual ~EpisodeObserver() = default;
  virtual void on_post(std::size_t step, TopicId topic) = 0;
  virtual void on_own_label(std::size_t /*step*/, std::size_t /*follower*/, int /*label*/) {}
  virtual void on_external_label(std::size_t /*step*/, const ExternalLabel& /*label*/) {}
};

/// Runs the posting loop for scenario.horizon() steps, streaming events to
/// `observer`. Returns the final posterior table.
BetaPosteriorTable simulate_episode(const PreferenceScenario& scenario,
                                    const PolicyConfig& config, Rng& rng,
                                    EpisodeObserver& observer);

/// simulate_episode, collecting everything into a Trajectory.
Trajectory run_episode(const PreferenceScenario& scenario, const PolicyConfig& config,
                       Rng& rng);

}  // namespace feedback
