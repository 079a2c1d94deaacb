#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "feedback/model.hpp"
#include "feedback/policy.hpp"
#include "feedback/random.hpp"

namespace feedback {

/// Distribution of synthetic users.
struct ScenarioGenConfig {
  std::size_t topics = 10;
  std::size_t followers = 10;
  /// Symmetric Dirichlet concentration over followers plus self.
  double gamma = 0.8;
  std::pair<double, double> q_beta{0.4, 0.6};
  std::pair<double, double> x_beta{0.4, 0.6};
  /// mu_cv ~ Uniform[0, 2 * mu_bar].
  double mu_bar = 0.0;
  std::size_t horizon = 1000;

  void validate() const;
};

PreferenceScenario sample_scenario(const ScenarioGenConfig& cfg, Rng& rng);

/// Exact Poisson draw; throws StructuralError for a negative or non-finite rate.
std::uint64_t poisson_draw(double rate, Rng& rng);

/// Cumulative pseudo-regret, either of a single run or averaged over runs.
struct RegretTrace {
  std::vector<double> cumulative_regret;
  /// Standard error of the mean at each t; zeros for a single run.
  std::vector<double> standard_error;
  std::size_t runs = 1;
  std::string scenario_digest;

  double final_value() const {
    return cumulative_regret.empty() ? 0.0 : cumulative_regret.back();
  }
  /// Mean cumulative regret after `t` steps (1-based).
  double at(std::size_t t) const { return cumulative_regret.at(t - 1); }
};

/// Per-step gap between the optimal and chosen topic's expected utility,
/// accumulated.
RegretTrace compute_regret(const Trajectory& trajectory,
                           const PreferenceScenario& scenario);

/// Worker count: FEEDBACK_BANDIT_THREADS if set, else the hardware count.
std::size_t default_thread_count();

/// Runs body(i) for i in [0, count) over `threads` workers.
void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& body);

/// Averages the regret of `runs` independent (scenario, episode) draws. Run i
/// uses the stream derive_seed(master_seed, i); the reduction is ordered by
/// run index so the result does not depend on `threads`.
RegretTrace monte_carlo_regret(const ScenarioGenConfig& cfg, const PolicyConfig& policy,
                               std::size_t runs, std::uint64_t master_seed,
                               std::size_t threads = 0);

/// Same, with a fixed scenario and only the episodes randomized.
RegretTrace monte_carlo_regret(const PreferenceScenario& scenario,
                               const PolicyConfig& policy, std::size_t runs,
                               std::uint64_t master_seed, std::size_t threads = 0);

/// The two-topic, single-follower construction used to show point estimates
/// can lock onto the worse topic: q = [q_good, 1/2], a_v = a_u = 1/2, equal x.
PreferenceScenario lock_in_scenario(std::size_t horizon, double q_good = 0.9,
                                    double x_common = 0.5);

struct LockInSummary {
  std::size_t horizon = 0;
  std::size_t runs = 0;
  /// Mean and standard error of the number of posts on the worse topic.
  double mean_worse_posts = 0.0;
  double stderr_worse_posts = 0.0;
  double mean_regret = 0.0;
  double stderr_regret = 0.0;
};

/// Point estimates, prior (3, 3), no external feedback, on lock_in_scenario.
LockInSummary lock_in_walk(std::size_t horizon, std::size_t runs, std::uint64_t master_seed,
                           std::size_t threads = 0);

/// Hex FNV-1a digest of a string; used to tag emitted artifacts.
std::string digest_hex(std::string_view text);

}  // namespace feedback
