#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "feedback/event_log.hpp"
#include "feedback/inference.hpp"
#include "feedback/model.hpp"
#include "feedback/policy.hpp"
#include "feedback/random.hpp"

namespace feedback {

// ---------------------------------------------------------------------------
// History replay
// ---------------------------------------------------------------------------

/// Posterior state the user had when making one observed post.
struct ReplayStep {
  TopicId observed;
  CountMatrix likes;
  CountMatrix dislikes;
  /// MAP estimates from the counts above.
  Matrix q_hat;
};

struct Replay {
  std::size_t topic_count = 0;
  std::size_t follower_count = 0;
  BetaPrior prior{};
  std::vector<ReplayStep> steps;
};

/// For every own post at time t, the estimates implied by all events with
/// time strictly before t.
Replay replay_estimates(const FeedbackLog& log, BetaPrior prior);

// ---------------------------------------------------------------------------
// Parameters
// ---------------------------------------------------------------------------

/// Natural coordinates (a, a_u, x) used by the likelihood.
struct ModelParams {
  std::vector<double> a;
  double a_u = 1.0;
  std::vector<double> x;
};

/// Convexified coordinates (a, a_u, z) with z_c = a_u x_c.
struct LossParams {
  std::vector<double> a;
  double a_u = 1.0;
  std::vector<double> z;
};

/// Throws StructuralError unless a, a_u lie on the simplex and x in [0,1]^K.
void check_feasible(const ModelParams& p, std::size_t topics, std::size_t followers);
/// Throws StructuralError unless a, a_u lie on the simplex and 0 <= z <= a_u.
void check_feasible(const LossParams& p, std::size_t topics, std::size_t followers);

/// Sort-based Euclidean projection onto the probability simplex.
std::vector<double> project_simplex(std::span<const double> v);

/// Exact Euclidean projection onto {a >= 0, a_u >= 0, sum a + a_u = 1,
/// 0 <= z_c <= a_u}.
LossParams project_loss_feasible(const LossParams& p);

// ---------------------------------------------------------------------------
// Likelihood
// ---------------------------------------------------------------------------

/// sum_t log p_lambda(c_t | H(t)) with scores a^T qhat_c(t) + a_u x_c.
double log_likelihood(const ModelParams& params, const Replay& replay, double lambda);

/// Gradient of log_likelihood with respect to (a, a_u, x).
ModelParams log_likelihood_gradient(const ModelParams& params, const Replay& replay,
                                    double lambda);

// ---------------------------------------------------------------------------
// Linear loss
// ---------------------------------------------------------------------------

/// Per-step preference estimates the loss is evaluated against. For the
/// posterior-sample variant each observed step contributes `samples` frozen
/// draws with weight 1 / samples.
struct LossProblem {
  std::size_t topic_count = 0;
  std::size_t follower_count = 0;
  std::vector<Matrix> q_hat;
  std::vector<std::size_t> observed;
  double weight = 1.0;

  std::size_t terms() const noexcept { return q_hat.size(); }
};

LossProblem point_loss_problem(const Replay& replay);
LossProblem sampled_loss_problem(const Replay& replay, std::size_t samples, Rng& rng);

/// sum over terms of weight * [max_c (a^T qhat_c + z_c) - (a^T qhat_obs + z_obs)].
double linear_loss(const LossParams& params, const LossProblem& problem);

/// A subgradient of linear_loss (lowest-index argmax at kinks).
LossParams linear_loss_subgradient(const LossParams& params, const LossProblem& problem);

// ---------------------------------------------------------------------------
// Fitting
// ---------------------------------------------------------------------------

enum class SolverKind { Subgradient, ExactLP };

std::string_view to_string(SolverKind kind);
SolverKind parse_solver(std::string_view text);

struct EstimationConfig {
  /// Softmax temperature.
  double lambda = 10.0;
  BetaPrior prior{};
  /// Which estimator the user is assumed to have used.
  EstimatorKind variant = EstimatorKind::PointEstimate;
  /// Frozen posterior draws per step for the posterior-sample variant.
  std::size_t samples = 10;
  SolverKind solver = SolverKind::Subgradient;
  /// Projected subgradient controls: eta_k = step_scale / sqrt(k).
  std::size_t max_iters = 2000;
  double step_scale = 0.5;
  double tolerance = 1e-9;
  /// Random feasible starts for the likelihood fit (plus the linear-loss
  /// warm start).
  std::size_t mle_starts = 5;
  std::size_t mle_max_iters = 400;
  std::uint64_t seed = 0;

  void validate() const;
};

inline constexpr double kSelfWeightGuard = 1e-6;

struct EstimationResult {
  UtilityWeights weights = UtilityWeights::self_only(0);
  std::vector<double> x_hat;
  std::vector<double> z_hat;
  double objective = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  /// False when a_u < 1e-6; x_hat is then reported as zeros.
  bool x_identifiable = true;
};

/// Packs loss coordinates into a result, recovering x = z / a_u.
EstimationResult make_result(const LossParams& params);
/// Packs likelihood coordinates into a result.
EstimationResult make_result(const ModelParams& params);

/// Linear-loss minimization on an already-built problem.
EstimationResult fit_linear_loss(const LossProblem& problem, const EstimationConfig& cfg);

/// Linear-loss fit of a feedback log (replay, sampling if needed, solve).
EstimationResult fit_linear_loss(const FeedbackLog& log, const EstimationConfig& cfg);

/// Multi-start projected-gradient ascent on the log-likelihood. `extra_starts`
/// are tried in addition to the random and linear-loss starts.
EstimationResult fit_mle(const Replay& replay, const EstimationConfig& cfg,
                         std::span<const ModelParams> extra_starts = {});

EstimationResult fit_mle(const FeedbackLog& log, const EstimationConfig& cfg);

/// Likelihood fit with every follower weight pinned to zero (a_u = 1).
EstimationResult fit_mle_null(const Replay& replay, const EstimationConfig& cfg);

// ---------------------------------------------------------------------------
// Accuracy
// ---------------------------------------------------------------------------

/// Squared parameter errors of one fit.
struct SquaredError {
  double a = 0.0;
  double a_u = 0.0;
  double x = 0.0;

  double total() const noexcept { return a + a_u + x; }
};

SquaredError squared_error(const PreferenceScenario& truth, const EstimationResult& fit);

/// sqrt(|a - a_hat|^2 + (a_u - a_u_hat)^2 + |x - x_hat|^2).
double rmse(const PreferenceScenario& truth, const EstimationResult& fit);

/// Root of the summed per-component means over many fits.
double aggregate_rmse(std::span<const SquaredError> errors);

}  // namespace feedback
