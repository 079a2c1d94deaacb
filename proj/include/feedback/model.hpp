#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <vector>

#include "feedback/grid.hpp"

namespace feedback {

/// Index of a topic in [0, K).
struct TopicId {
  std::size_t index = 0;

  auto operator<=>(const TopicId&) const = default;
};

inline constexpr double kSimplexTolerance = 1e-9;

/// Convex weights the user puts on each follower's feedback and on her own
/// topic preferences. Construction rejects anything off the simplex.
class UtilityWeights {
 public:
  UtilityWeights(std::vector<double> follower_weights, double self_weight);

  /// Uniform weights over followers and self.
  static UtilityWeights uniform(std::size_t followers);
  /// a_u = 1, every follower weight zero.
  static UtilityWeights self_only(std::size_t followers);

  std::span<const double> followers() const noexcept { return follower_; }
  double follower(std::size_t v) const { return follower_.at(v); }
  double self() const noexcept { return self_; }
  std::size_t follower_count() const noexcept { return follower_.size(); }

  bool operator==(const UtilityWeights&) const = default;

 private:
  std::vector<double> follower_;
  double self_;
};

/// Topic x follower matrix of feedback probabilities q_cv in [0, 1].
class PreferenceMatrix {
 public:
  explicit PreferenceMatrix(Matrix q);

  const Matrix& values() const noexcept { return q_; }
  double operator()(std::size_t c, std::size_t v) const { return q_(c, v); }
  std::size_t topics() const noexcept { return q_.rows(); }
  std::size_t followers() const noexcept { return q_.cols(); }

 private:
  Matrix q_;
};

/// The user's own preference x_c in [0, 1] for each topic.
class OwnPreferences {
 public:
  explicit OwnPreferences(std::vector<double> x);

  std::span<const double> values() const noexcept { return x_; }
  double operator[](std::size_t c) const { return x_[c]; }
  std::size_t size() const noexcept { return x_.size(); }

 private:
  std::vector<double> x_;
};

/// Ground truth for one simulated user.
class PreferenceScenario {
 public:
  PreferenceScenario(UtilityWeights weights, PreferenceMatrix q, OwnPreferences x,
                     Matrix external_rates, std::size_t horizon);

  const UtilityWeights& weights() const noexcept { return weights_; }
  const PreferenceMatrix& q() const noexcept { return q_; }
  const OwnPreferences& x() const noexcept { return x_; }
  /// Poisson rate of feedback follower v gives others on topic c, per step.
  const Matrix& external_rates() const noexcept { return mu_; }
  std::size_t horizon() const noexcept { return horizon_; }
  std::size_t topics() const noexcept { return q_.topics(); }
  std::size_t followers() const noexcept { return q_.followers(); }

  PreferenceScenario with_horizon(std::size_t horizon) const;

 private:
  UtilityWeights weights_;
  PreferenceMatrix q_;
  OwnPreferences x_;
  Matrix mu_;
  std::size_t horizon_;
};

/// a^T q_c + a_u x_c.
double expected_step_utility(const PreferenceScenario& scenario, TopicId c);

/// Score a^T q_c + a_u x_c of every topic for an arbitrary q estimate.
std::vector<double> topic_scores(const UtilityWeights& weights, const Matrix& q,
                                 std::span<const double> x);

/// First index of the maximum; ties go to the lowest index.
std::size_t argmax_lowest(std::span<const double> values);

/// Deterministic optimal topic under known preferences.
TopicId optimal_topic(const PreferenceScenario& scenario);

/// T times the per-step utility of the optimal topic.
double optimal_cumulative_utility(const PreferenceScenario& scenario);

}  // namespace feedback
