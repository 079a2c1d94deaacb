#include "feedback/policy.hpp"

#include <string>

#include "feedback/softmax.hpp"

namespace feedback {

std::string_view to_string(EstimatorKind kind) {
  return kind == EstimatorKind::PointEstimate ? "point" : "posterior";
}

EstimatorKind parse_estimator(std::string_view text) {
  if (text == "point" || text == "PointEstimate" || text == "map") {
    return EstimatorKind::PointEstimate;
  }
  if (text == "posterior" || text == "PosteriorSample" || text == "sample") {
    return EstimatorKind::PosteriorSample;
  }
  throw StructuralError("unknown estimator kind '" + std::string(text) + "'");
}

BetaPosteriorTable replay_table(const Trajectory& trajectory, BetaPrior prior) {
  BetaPosteriorTable table(prior, trajectory.topic_count, trajectory.follower_count);
  for (std::size_t t = 0; t < trajectory.steps(); ++t) {
    const auto& labels = trajectory.own_feedback[t];
    for (std::size_t v = 0; v < labels.size(); ++v) {
      table.record(trajectory.topics[t], v, labels[v]);
    }
    for (const auto& ext : trajectory.external_feedback[t]) {
      table.record(ext.topic, ext.follower, ext.label);
    }
  }
  return table;
}

std::vector<double> estimated_scores(const BetaPosteriorTable& table,
                                     const UtilityWeights& weights,
                                     const OwnPreferences& x, EstimatorKind estimator,
                                     Rng& rng) {
  if (table.topics() != x.size() || table.followers() != weights.follower_count()) {
    throw StructuralError("posterior table does not match weights / preferences");
  }
  const Matrix q_hat = estimator == EstimatorKind::PointEstimate
                           ? map_estimates(table)
                           : sample_estimates(table, rng);
  return topic_scores(weights, q_hat, x.values());
}

TopicId choose_topic(const BetaPosteriorTable& table, const UtilityWeights& weights,
                     const OwnPreferences& x, EstimatorKind estimator, Rng& rng) {
  return TopicId{argmax_lowest(estimated_scores(table, weights, x, estimator, rng))};
}

namespace {

std::size_t draw_categorical(std::span<const double> p, Rng& rng) {
  const double u = rng.uniform();
  double acc = 0.0;
  for (std::size_t c = 0; c < p.size(); ++c) {
    acc += p[c];
    if (u < acc) return c;
  }
  return p.size() - 1;
}

class TrajectoryRecorder final : public EpisodeObserver {
 public:
  explicit TrajectoryRecorder(Trajectory& out) : out_(out) {}

  void on_post(std::size_t, TopicId topic) override {
    out_.topics.push_back(topic);
    out_.own_feedback.emplace_back(out_.follower_count, 0);
    out_.external_feedback.emplace_back();
  }
  void on_own_label(std::size_t step, std::size_t follower, int label) override {
    out_.own_feedback[step][follower] = static_cast<std::uint8_t>(label);
  }
  void on_external_label(std::size_t step, const ExternalLabel& label) override {
    out_.external_feedback[step].push_back(label);
  }

 private:
  Trajectory& out_;
};

}  // namespace

BetaPosteriorTable simulate_episode(const PreferenceScenario& scenario,
                                    const PolicyConfig& config, Rng& rng,
                                    EpisodeObserver& observer) {
  const std::size_t topics = scenario.topics();
  const std::size_t followers = scenario.followers();
  BetaPosteriorTable table(config.prior, topics, followers);
  const auto& q = scenario.q();
  const auto& mu = scenario.external_rates();

  for (std::size_t step = 0; step < scenario.horizon(); ++step) {
    const auto scores =
        estimated_scores(table, scenario.weights(), scenario.x(), config.estimator, rng);
    TopicId chosen;
    if (config.softmax_lambda) {
      chosen = TopicId{draw_categorical(softmax_prob(scores, *config.softmax_lambda), rng)};
    } else {
      chosen = TopicId{argmax_lowest(scores)};
    }
    observer.on_post(step, chosen);

    for (std::size_t v = 0; v < followers; ++v) {
      const int label = rng.bernoulli(q(chosen.index, v)) ? 1 : 0;
      table.record(chosen, v, label);
      observer.on_own_label(step, v, label);
    }

    if (!config.use_external_feedback) continue;
    for (std::size_t c = 0; c < topics; ++c) {
      for (std::size_t v = 0; v < followers; ++v) {
        const std::uint64_t exposures = rng.poisson(mu(c, v));
        for (std::uint64_t e = 0; e < exposures; ++e) {
          const ExternalLabel ext{TopicId{c}, v, rng.bernoulli(q(c, v)) ? 1 : 0};
          table.record(ext.topic, ext.follower, ext.label);
          observer.on_external_label(step, ext);
        }
      }
    }
  }
  return table;
}

Trajectory run_episode(const PreferenceScenario& scenario, const PolicyConfig& config,
                       Rng& rng) {
  Trajectory out;
  out.topic_count = scenario.topics();
  out.follower_count = scenario.followers();
  TrajectoryRecorder recorder(out);
  simulate_episode(scenario, config, rng, recorder);
  return out;
}

}  // namespace feedback
