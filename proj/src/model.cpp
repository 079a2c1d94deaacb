#include "feedback/model.hpp"

#include <cmath>
#include <string>

namespace feedback {

namespace {

bool in_unit_interval(double v) { return std::isfinite(v) && v >= 0.0 && v <= 1.0; }

}  // namespace

UtilityWeights::UtilityWeights(std::vector<double> follower_weights, double self_weight)
    : follower_(std::move(follower_weights)), self_(self_weight) {
  double total = self_;
  if (!std::isfinite(self_) || self_ < 0.0) {
    throw StructuralError("self weight must be a nonnegative finite number");
  }
  for (double a : follower_) {
    if (!std::isfinite(a) || a < 0.0) {
      throw StructuralError("follower weights must be nonnegative finite numbers");
    }
    total += a;
  }
  if (std::fabs(total - 1.0) > kSimplexTolerance) {
    throw StructuralError("utility weights must sum to 1, got " + std::to_string(total));
  }
}

UtilityWeights UtilityWeights::uniform(std::size_t followers) {
  const double w = 1.0 / static_cast<double>(followers + 1);
  return UtilityWeights(std::vector<double>(followers, w), w);
}

UtilityWeights UtilityWeights::self_only(std::size_t followers) {
  return UtilityWeights(std::vector<double>(followers, 0.0), 1.0);
}

PreferenceMatrix::PreferenceMatrix(Matrix q) : q_(std::move(q)) {
  for (double v : q_.values()) {
    if (!in_unit_interval(v)) throw StructuralError("preference q_cv outside [0, 1]");
  }
}

OwnPreferences::OwnPreferences(std::vector<double> x) : x_(std::move(x)) {
  for (double v : x_) {
    if (!in_unit_interval(v)) throw StructuralError("own preference x_c outside [0, 1]");
  }
}

PreferenceScenario::PreferenceScenario(UtilityWeights weights, PreferenceMatrix q,
                                       OwnPreferences x, Matrix external_rates,
                                       std::size_t horizon)
    : weights_(std::move(weights)),
      q_(std::move(q)),
      x_(std::move(x)),
      mu_(std::move(external_rates)),
      horizon_(horizon) {
  if (q_.topics() == 0) throw StructuralError("scenario needs at least one topic");
  if (q_.followers() != weights_.follower_count()) {
    throw StructuralError("q has " + std::to_string(q_.followers()) +
                          " follower columns but weights have " +
                          std::to_string(weights_.follower_count()));
  }
  if (x_.size() != q_.topics()) {
    throw StructuralError("x length does not match the number of topics");
  }
  if (mu_.rows() != q_.topics() || mu_.cols() != q_.followers()) {
    throw StructuralError("external rate matrix shape does not match q");
  }
  for (double m : mu_.values()) {
    if (!std::isfinite(m) || m < 0.0) throw StructuralError("external rates must be >= 0");
  }
}

PreferenceScenario PreferenceScenario::with_horizon(std::size_t horizon) const {
  PreferenceScenario copy = *this;
  copy.horizon_ = horizon;
  return copy;
}

std::vector<double> topic_scores(const UtilityWeights& weights, const Matrix& q,
                                 std::span<const double> x) {
  if (q.cols() != weights.follower_count() || q.rows() != x.size()) {
    throw StructuralError("score inputs have inconsistent dimensions");
  }
  const auto a = weights.followers();
  std::vector<double> scores(q.rows());
  for (std::size_t c = 0; c < q.rows(); ++c) {
    const auto qc = q.row(c);
    double s = weights.self() * x[c];
    for (std::size_t v = 0; v < a.size(); ++v) s += a[v] * qc[v];
    scores[c] = s;
  }
  return scores;
}

std::size_t argmax_lowest(std::span<const double> values) {
  if (values.empty()) throw StructuralError("argmax of an empty range");
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[best]) best = i;
  }
  return best;
}

double expected_step_utility(const PreferenceScenario& scenario, TopicId c) {
  if (c.index >= scenario.topics()) throw StructuralError("topic index out of range");
  const auto a = scenario.weights().followers();
  const auto qc = scenario.q().values().row(c.index);
  double s = scenario.weights().self() * scenario.x()[c.index];
  for (std::size_t v = 0; v < a.size(); ++v) s += a[v] * qc[v];
  return s;
}

TopicId optimal_topic(const PreferenceScenario& scenario) {
  const auto scores =
      topic_scores(scenario.weights(), scenario.q().values(), scenario.x().values());
  return TopicId{argmax_lowest(scores)};
}

double optimal_cumulative_utility(const PreferenceScenario& scenario) {
  return static_cast<double>(scenario.horizon()) *
         expected_step_utility(scenario, optimal_topic(scenario));
}

}  // namespace feedback
