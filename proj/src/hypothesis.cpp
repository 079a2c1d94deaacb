#include "feedback/hypothesis.hpp"

#include <algorithm>
#include <set>

#include "feedback/special.hpp"

namespace feedback {

TestReport llr_statistic(const FeedbackLog& log, const EstimationConfig& cfg,
                         const TestOptions& options) {
  cfg.validate();
  const Replay replay = replay_estimates(log, cfg.prior);
  if (replay.steps.size() < 2) {
    throw UntestableLogError("log has fewer than two own posts");
  }
  std::set<std::size_t> topics;
  for (const auto& step : replay.steps) topics.insert(step.observed.index);
  if (topics.size() < 2) {
    throw UntestableLogError("every own post is on the same topic");
  }
  if (log.follower_count == 0) throw UntestableLogError("log has no followers");

  TestReport report;
  report.user = options.user;
  report.dof = options.dof.value_or(static_cast<int>(log.follower_count));
  if (report.dof < 1) throw StructuralError("degrees of freedom must be >= 1");

  report.fit_null = fit_mle_null(replay, cfg);
  const ModelParams null_point{
      std::vector<double>(log.follower_count, 0.0), 1.0, report.fit_null.x_hat};
  report.fit_alt = fit_mle(replay, cfg, std::span<const ModelParams>(&null_point, 1));

  report.llr = report.fit_alt.objective - report.fit_null.objective;
  report.p_value = chi2_survival(std::max(0.0, 2.0 * report.llr), report.dof);
  for (double level : options.levels) {
    report.reject_at.push_back({level, report.p_value < level});
  }
  return report;
}

CohortSummary cohort_summary(std::span<const TestReport> reports,
                             std::span<const double> levels) {
  if (reports.empty()) throw StructuralError("cohort summary of no reports");
  CohortSummary out;
  out.total_users = reports.size();
  for (double level : levels) {
    LevelSummary s{level, 0, 0.0};
    for (const auto& r : reports) s.rejected += r.p_value < level ? 1 : 0;
    s.fraction = static_cast<double>(s.rejected) / static_cast<double>(reports.size());
    out.levels.push_back(s);
  }
  return out;
}

}  // namespace feedback
