#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "feedback/estimation.hpp"
#include "feedback/event_log.hpp"

namespace feedback {

struct TestOptions {
  std::string user;
  /// Degrees of freedom of the reference chi-squared law; defaults to the
  /// number of followers (every follower weight is pinned under the null).
  std::optional<int> dof;
  std::vector<double> levels{0.01, 0.05, 0.1};
};

struct LevelVerdict {
  double level = 0.0;
  bool reject = false;
};

struct TestReport {
  std::string user;
  /// loglik(alternative) - loglik(null).
  double llr = 0.0;
  int dof = 1;
  /// chi2_survival(2 * llr, dof).
  double p_value = 1.0;
  std::vector<LevelVerdict> reject_at;
  EstimationResult fit_alt;
  EstimationResult fit_null;
};

/// Fits the alternative (free follower weights) and the null (a_v = 0,
/// a_u = 1) by maximum likelihood under the same lambda and converts the
/// log-likelihood ratio into a Wilks p-value. The null optimum seeds the
/// alternative fit, so llr >= 0 up to rounding.
///
/// Throws UntestableLogError when the log has fewer than two own posts or
/// all posts share one topic.
TestReport llr_statistic(const FeedbackLog& log, const EstimationConfig& cfg,
                         const TestOptions& options = {});

struct LevelSummary {
  double level = 0.0;
  std::size_t rejected = 0;
  double fraction = 0.0;
};

struct CohortSummary {
  std::size_t total_users = 0;
  std::vector<LevelSummary> levels;
};

/// Counts rejections (p_value < level) per level. Throws StructuralError on
/// an empty report list.
CohortSummary cohort_summary(std::span<const TestReport> reports,
                             std::span<const double> levels);

}  // namespace feedback
