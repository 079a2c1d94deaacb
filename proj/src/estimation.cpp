#include "feedback/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <string>

#include "feedback/lp.hpp"
#include "feedback/softmax.hpp"

namespace feedback {

// ---------------------------------------------------------------------------
// Replay
// ---------------------------------------------------------------------------

Replay replay_estimates(const FeedbackLog& log, BetaPrior prior) {
  log.validate();
  Replay out;
  out.topic_count = log.topic_count;
  out.follower_count = log.follower_count;
  out.prior = prior;
  BetaPosteriorTable table(prior, log.topic_count, log.follower_count);

  // Events at the current timestamp are held back until time advances so
  // that a post only sees strictly earlier feedback.
  std::vector<const FeedbackEvent*> pending;
  std::int64_t current = std::numeric_limits<std::int64_t>::min();
  auto flush = [&] {
    for (const FeedbackEvent* e : pending) {
      for (const auto& [v, label] : e->labels) table.record(e->topic, v, label);
    }
    pending.clear();
  };

  for (const auto& e : log.events) {
    if (e.t != current) {
      flush();
      current = e.t;
    }
    if (e.kind == EventKind::OwnPost) {
      out.steps.push_back({e.topic, table.likes(), table.dislikes(), map_estimates(table)});
    }
    pending.push_back(&e);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Feasibility and projections
// ---------------------------------------------------------------------------

namespace {

constexpr double kFeasTol = 1e-9;

void check_simplex(std::span<const double> a, double a_u, std::size_t followers) {
  if (a.size() != followers) throw StructuralError("follower weight count mismatch");
  double total = a_u;
  if (!(a_u >= -kFeasTol)) throw StructuralError("self weight is negative");
  for (double v : a) {
    if (!(v >= -kFeasTol)) throw StructuralError("follower weight is negative");
    total += v;
  }
  if (std::fabs(total - 1.0) > 1e-6) throw StructuralError("weights are off the simplex");
}

}  // namespace

void check_feasible(const ModelParams& p, std::size_t topics, std::size_t followers) {
  check_simplex(p.a, p.a_u, followers);
  if (p.x.size() != topics) throw StructuralError("x length mismatch");
  for (double v : p.x) {
    if (!(v >= -kFeasTol && v <= 1.0 + kFeasTol)) throw StructuralError("x outside [0, 1]");
  }
}

void check_feasible(const LossParams& p, std::size_t topics, std::size_t followers) {
  check_simplex(p.a, p.a_u, followers);
  if (p.z.size() != topics) throw StructuralError("z length mismatch");
  for (double v : p.z) {
    if (!(v >= -kFeasTol && v <= p.a_u + kFeasTol)) {
      throw StructuralError("z outside [0, a_u]");
    }
  }
}

std::vector<double> project_simplex(std::span<const double> v) {
  if (v.empty()) throw StructuralError("projection of an empty vector");
  std::vector<double> sorted(v.begin(), v.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double cumulative = 0.0;
  double theta = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    cumulative += sorted[i];
    const double candidate = (cumulative - 1.0) / static_cast<double>(i + 1);
    if (sorted[i] - candidate > 0.0) theta = candidate;
  }
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::max(0.0, v[i] - theta);
  return out;
}

LossParams project_loss_feasible(const LossParams& p) {
  // KKT with multiplier theta on the sum constraint:
  //   a_v = max(0, a~_v - theta)
  //   a_u solves a_u - a~_u + theta - sum_c (z~_c - a_u)_+ = 0 on a_u >= 0
  //   z_c = clamp(z~_c, 0, a_u)
  // and the total a + a_u is decreasing in theta, found by bisection.
  std::vector<double> zs = p.z;
  std::sort(zs.begin(), zs.end(), std::greater<>());
  std::vector<double> prefix(zs.size() + 1, 0.0);
  for (std::size_t j = 0; j < zs.size(); ++j) prefix[j + 1] = prefix[j] + zs[j];

  auto self_weight = [&](double theta) {
    const double base = p.a_u - theta;
    // phi(0) >= 0 means the root is at or below zero.
    double phi0 = -base;
    for (double z : zs) phi0 -= std::max(0.0, z);
    if (phi0 >= 0.0) return 0.0;
    for (std::size_t j = 0; j <= zs.size(); ++j) {
      const double root = (base + prefix[j]) / static_cast<double>(j + 1);
      const double upper = j == 0 ? std::numeric_limits<double>::infinity() : zs[j - 1];
      const double lower = j == zs.size() ? -std::numeric_limits<double>::infinity() : zs[j];
      if (root <= upper && root >= lower) return std::max(0.0, root);
    }
    return 0.0;
  };
  auto total = [&](double theta) {
    double s = self_weight(theta);
    for (double a : p.a) s += std::max(0.0, a - theta);
    return s;
  };

  double lo = -1.0;
  while (total(lo) < 1.0) lo = 2.0 * lo - 1.0;
  double hi = 1.0;
  while (total(hi) > 1.0) hi = 2.0 * hi + 1.0;
  for (int i = 0; i < 200 && hi - lo > 1e-16 * std::max(1.0, std::fabs(lo)); ++i) {
    const double mid = 0.5 * (lo + hi);
    (total(mid) > 1.0 ? lo : hi) = mid;
  }
  const double theta = 0.5 * (lo + hi);

  LossParams out;
  out.a.resize(p.a.size());
  for (std::size_t v = 0; v < p.a.size(); ++v) out.a[v] = std::max(0.0, p.a[v] - theta);
  out.a_u = self_weight(theta);
  // Remove the bisection residue so the sum is 1 to rounding.
  const double sum = std::accumulate(out.a.begin(), out.a.end(), out.a_u);
  if (sum > 0.0) {
    for (double& a : out.a) a /= sum;
    out.a_u /= sum;
  }
  out.z.resize(p.z.size());
  for (std::size_t c = 0; c < p.z.size(); ++c) out.z[c] = std::clamp(p.z[c], 0.0, out.a_u);
  return out;
}

// ---------------------------------------------------------------------------
// Likelihood
// ---------------------------------------------------------------------------

namespace {

void scores_into(const Matrix& q_hat, std::span<const double> a, double a_u,
                 std::span<const double> x_or_z, bool scale_by_self,
                 std::vector<double>& out) {
  const std::size_t topics = q_hat.rows();
  out.resize(topics);
  for (std::size_t c = 0; c < topics; ++c) {
    const auto row = q_hat.row(c);
    double s = scale_by_self ? a_u * x_or_z[c] : x_or_z[c];
    for (std::size_t v = 0; v < a.size(); ++v) s += a[v] * row[v];
    out[c] = s;
  }
}

}  // namespace

double log_likelihood(const ModelParams& params, const Replay& replay, double lambda) {
  check_feasible(params, replay.topic_count, replay.follower_count);
  double total = 0.0;
  std::vector<double> scores;
  for (const auto& step : replay.steps) {
    scores_into(step.q_hat, params.a, params.a_u, params.x, true, scores);
    total += log_softmax_at(scores, lambda, step.observed.index);
  }
  return total;
}

ModelParams log_likelihood_gradient(const ModelParams& params, const Replay& replay,
                                    double lambda) {
  check_feasible(params, replay.topic_count, replay.follower_count);
  ModelParams g;
  g.a.assign(params.a.size(), 0.0);
  g.a_u = 0.0;
  g.x.assign(params.x.size(), 0.0);
  std::vector<double> scores;
  for (const auto& step : replay.steps) {
    scores_into(step.q_hat, params.a, params.a_u, params.x, true, scores);
    const auto p = softmax_prob(scores, lambda);
    for (std::size_t c = 0; c < p.size(); ++c) {
      const double w = lambda * ((c == step.observed.index ? 1.0 : 0.0) - p[c]);
      const auto row = step.q_hat.row(c);
      for (std::size_t v = 0; v < g.a.size(); ++v) g.a[v] += w * row[v];
      g.a_u += w * params.x[c];
      g.x[c] += w * params.a_u;
    }
  }
  return g;
}

// ---------------------------------------------------------------------------
// Linear loss
// ---------------------------------------------------------------------------

LossProblem point_loss_problem(const Replay& replay) {
  LossProblem out;
  out.topic_count = replay.topic_count;
  out.follower_count = replay.follower_count;
  for (const auto& step : replay.steps) {
    out.q_hat.push_back(step.q_hat);
    out.observed.push_back(step.observed.index);
  }
  return out;
}

LossProblem sampled_loss_problem(const Replay& replay, std::size_t samples, Rng& rng) {
  if (samples < 1) throw StructuralError("posterior-sample variant needs S >= 1");
  LossProblem out;
  out.topic_count = replay.topic_count;
  out.follower_count = replay.follower_count;
  out.weight = 1.0 / static_cast<double>(samples);
  for (const auto& step : replay.steps) {
    for (std::size_t s = 0; s < samples; ++s) {
      Matrix draw(replay.topic_count, replay.follower_count);
      for (std::size_t c = 0; c < replay.topic_count; ++c) {
        for (std::size_t v = 0; v < replay.follower_count; ++v) {
          draw(c, v) = rng.beta(replay.prior.alpha + static_cast<double>(step.likes(c, v)),
                                replay.prior.beta + static_cast<double>(step.dislikes(c, v)));
        }
      }
      out.q_hat.push_back(std::move(draw));
      out.observed.push_back(step.observed.index);
    }
  }
  return out;
}

double linear_loss(const LossParams& params, const LossProblem& problem) {
  check_feasible(params, problem.topic_count, problem.follower_count);
  double total = 0.0;
  std::vector<double> scores;
  for (std::size_t i = 0; i < problem.terms(); ++i) {
    scores_into(problem.q_hat[i], params.a, params.a_u, params.z, false, scores);
    const double best = *std::max_element(scores.begin(), scores.end());
    total += best - scores[problem.observed[i]];
  }
  return problem.weight * total;
}

LossParams linear_loss_subgradient(const LossParams& params, const LossProblem& problem) {
  check_feasible(params, problem.topic_count, problem.follower_count);
  LossParams g;
  g.a.assign(params.a.size(), 0.0);
  g.a_u = 0.0;
  g.z.assign(params.z.size(), 0.0);
  std::vector<double> scores;
  for (std::size_t i = 0; i < problem.terms(); ++i) {
    const Matrix& q = problem.q_hat[i];
    scores_into(q, params.a, params.a_u, params.z, false, scores);
    const std::size_t top = argmax_lowest(scores);
    const std::size_t obs = problem.observed[i];
    // A tied observed topic is itself a maximizer; its term contributes zero.
    if (scores[obs] >= scores[top]) continue;
    const auto qt = q.row(top);
    const auto qo = q.row(obs);
    for (std::size_t v = 0; v < g.a.size(); ++v) g.a[v] += problem.weight * (qt[v] - qo[v]);
    g.z[top] += problem.weight;
    g.z[obs] -= problem.weight;
  }
  return g;
}

// ---------------------------------------------------------------------------
// Fitting
// ---------------------------------------------------------------------------

std::string_view to_string(SolverKind kind) {
  return kind == SolverKind::Subgradient ? "subgradient" : "lp";
}

SolverKind parse_solver(std::string_view text) {
  if (text == "subgradient" || text == "Subgradient") return SolverKind::Subgradient;
  if (text == "lp" || text == "ExactLP" || text == "exact") return SolverKind::ExactLP;
  throw StructuralError("unknown solver '" + std::string(text) + "'");
}

void EstimationConfig::validate() const {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw StructuralError("softmax temperature lambda must be > 0");
  }
  prior.validate();
  if (samples < 1) throw StructuralError("samples must be >= 1");
  if (!(step_scale > 0.0)) throw StructuralError("step scale must be > 0");
}

EstimationResult make_result(const LossParams& params) {
  EstimationResult r;
  r.weights = UtilityWeights(params.a, params.a_u);
  r.z_hat = params.z;
  r.x_identifiable = params.a_u >= kSelfWeightGuard;
  r.x_hat.assign(params.z.size(), 0.0);
  if (r.x_identifiable) {
    for (std::size_t c = 0; c < params.z.size(); ++c) {
      r.x_hat[c] = std::clamp(params.z[c] / params.a_u, 0.0, 1.0);
    }
  }
  return r;
}

EstimationResult make_result(const ModelParams& params) {
  EstimationResult r;
  r.weights = UtilityWeights(params.a, params.a_u);
  r.x_hat = params.x;
  r.z_hat.resize(params.x.size());
  for (std::size_t c = 0; c < params.x.size(); ++c) r.z_hat[c] = params.a_u * params.x[c];
  r.x_identifiable = params.a_u >= kSelfWeightGuard;
  return r;
}

namespace {

LossParams uniform_loss_start(std::size_t topics, std::size_t followers) {
  const double w = 1.0 / static_cast<double>(followers + 1);
  return {std::vector<double>(followers, w), w, std::vector<double>(topics, w / 2.0)};
}

double max_abs_diff(const LossParams& p, const LossParams& q) {
  double d = std::fabs(p.a_u - q.a_u);
  for (std::size_t i = 0; i < p.a.size(); ++i) d = std::max(d, std::fabs(p.a[i] - q.a[i]));
  for (std::size_t i = 0; i < p.z.size(); ++i) d = std::max(d, std::fabs(p.z[i] - q.z[i]));
  return d;
}

EstimationResult solve_subgradient(const LossProblem& problem, const EstimationConfig& cfg) {
  LossParams current = uniform_loss_start(problem.topic_count, problem.follower_count);
  LossParams best = current;
  double best_loss = linear_loss(current, problem);
  const double scale =
      1.0 / std::max(1.0, problem.weight * static_cast<double>(problem.terms()));

  std::size_t iterations = 0;
  bool converged = false;
  for (std::size_t k = 1; k <= cfg.max_iters && best_loss > 0.0; ++k) {
    iterations = k;
    const LossParams g = linear_loss_subgradient(current, problem);
    const double eta = cfg.step_scale / std::sqrt(static_cast<double>(k));
    LossParams trial = current;
    for (std::size_t v = 0; v < trial.a.size(); ++v) trial.a[v] -= eta * scale * g.a[v];
    trial.a_u -= eta * scale * g.a_u;
    for (std::size_t c = 0; c < trial.z.size(); ++c) trial.z[c] -= eta * scale * g.z[c];
    LossParams next = project_loss_feasible(trial);
    const double change = max_abs_diff(next, current);
    current = std::move(next);
    const double loss = linear_loss(current, problem);
    if (loss < best_loss) {
      best_loss = loss;
      best = current;
    }
    if (change < cfg.tolerance) {
      converged = true;
      break;
    }
  }
  if (best_loss == 0.0) converged = true;

  EstimationResult r = make_result(best);
  r.objective = best_loss;
  r.iterations = iterations;
  r.converged = converged;
  return r;
}

EstimationResult solve_exact_lp(const LossProblem& problem) {
  const std::size_t followers = problem.follower_count;
  const std::size_t topics = problem.topic_count;
  const std::size_t terms = problem.terms();
  // Variables: a (followers), a_u, z (topics), m (terms).
  const std::size_t idx_au = followers;
  const std::size_t idx_z = followers + 1;
  const std::size_t idx_m = idx_z + topics;
  const std::size_t n = idx_m + terms;

  lp::LinearProgram program;
  program.objective.assign(n, 0.0);
  for (std::size_t i = 0; i < terms; ++i) {
    const auto qo = problem.q_hat[i].row(problem.observed[i]);
    program.objective[idx_m + i] += problem.weight;
    for (std::size_t v = 0; v < followers; ++v) program.objective[v] -= problem.weight * qo[v];
    program.objective[idx_z + problem.observed[i]] -= problem.weight;
  }
  // a^T qhat_c + z_c - m_i <= 0 for every term and topic.
  for (std::size_t i = 0; i < terms; ++i) {
    for (std::size_t c = 0; c < topics; ++c) {
      lp::Constraint row{std::vector<double>(n, 0.0), lp::Relation::LessEqual, 0.0};
      const auto qc = problem.q_hat[i].row(c);
      for (std::size_t v = 0; v < followers; ++v) row.coefficients[v] = qc[v];
      row.coefficients[idx_z + c] = 1.0;
      row.coefficients[idx_m + i] = -1.0;
      program.constraints.push_back(std::move(row));
    }
  }
  // z_c <= a_u.
  for (std::size_t c = 0; c < topics; ++c) {
    lp::Constraint row{std::vector<double>(n, 0.0), lp::Relation::LessEqual, 0.0};
    row.coefficients[idx_z + c] = 1.0;
    row.coefficients[idx_au] = -1.0;
    program.constraints.push_back(std::move(row));
  }
  // sum a + a_u = 1.
  {
    lp::Constraint row{std::vector<double>(n, 0.0), lp::Relation::Equal, 1.0};
    for (std::size_t v = 0; v <= followers; ++v) row.coefficients[v] = 1.0;
    program.constraints.push_back(std::move(row));
  }

  lp::Options options;
  // Every term max_c s_c - s_observed is nonnegative.
  options.objective_lower_bound = 0.0;
  const lp::Solution sol = lp::solve(program, options);
  if (sol.status != lp::Status::Optimal) {
    throw SolverError("linear-loss LP failed: " + std::string(lp::to_string(sol.status)));
  }

  LossParams params;
  params.a.assign(sol.x.begin(), sol.x.begin() + static_cast<std::ptrdiff_t>(followers));
  params.a_u = sol.x[idx_au];
  params.z.assign(sol.x.begin() + static_cast<std::ptrdiff_t>(idx_z),
                  sol.x.begin() + static_cast<std::ptrdiff_t>(idx_m));
  const double sum = std::accumulate(params.a.begin(), params.a.end(), params.a_u);
  for (double& a : params.a) a /= sum;
  params.a_u /= sum;
  for (double& z : params.z) z = std::clamp(z, 0.0, params.a_u);

  EstimationResult r = make_result(params);
  r.objective = linear_loss(params, problem);
  r.iterations = sol.iterations;
  r.converged = true;
  return r;
}

}  // namespace

EstimationResult fit_linear_loss(const LossProblem& problem, const EstimationConfig& cfg) {
  cfg.validate();
  if (problem.terms() == 0) throw StructuralError("linear-loss fit needs at least one post");
  return cfg.solver == SolverKind::ExactLP ? solve_exact_lp(problem)
                                           : solve_subgradient(problem, cfg);
}

namespace {

LossProblem build_problem(const Replay& replay, const EstimationConfig& cfg) {
  if (cfg.variant == EstimatorKind::PointEstimate) return point_loss_problem(replay);
  Rng rng(derive_seed(cfg.seed, 0x5a5a));
  return sampled_loss_problem(replay, cfg.samples, rng);
}

}  // namespace

EstimationResult fit_linear_loss(const FeedbackLog& log, const EstimationConfig& cfg) {
  cfg.validate();
  const Replay replay = replay_estimates(log, cfg.prior);
  if (replay.steps.empty()) throw StructuralError("linear-loss fit needs at least one post");
  return fit_linear_loss(build_problem(replay, cfg), cfg);
}

namespace {

// Flat layout [a..., a_u, x...]; the null model keeps a = 0, a_u = 1.
struct MleState {
  ModelParams params;
  double value = -std::numeric_limits<double>::infinity();
};

ModelParams project_model(const ModelParams& p, bool null_model) {
  ModelParams out = p;
  if (null_model) {
    std::fill(out.a.begin(), out.a.end(), 0.0);
    out.a_u = 1.0;
  } else {
    std::vector<double> w(p.a.begin(), p.a.end());
    w.push_back(p.a_u);
    w = project_simplex(w);
    out.a_u = w.back();
    w.pop_back();
    out.a = std::move(w);
  }
  for (double& x : out.x) x = std::clamp(x, 0.0, 1.0);
  return out;
}

double dot_step(const ModelParams& g, const ModelParams& from, const ModelParams& to) {
  double d = g.a_u * (to.a_u - from.a_u);
  for (std::size_t i = 0; i < g.a.size(); ++i) d += g.a[i] * (to.a[i] - from.a[i]);
  for (std::size_t i = 0; i < g.x.size(); ++i) d += g.x[i] * (to.x[i] - from.x[i]);
  return d;
}

double max_abs_diff(const ModelParams& p, const ModelParams& q) {
  double d = std::fabs(p.a_u - q.a_u);
  for (std::size_t i = 0; i < p.a.size(); ++i) d = std::max(d, std::fabs(p.a[i] - q.a[i]));
  for (std::size_t i = 0; i < p.x.size(); ++i) d = std::max(d, std::fabs(p.x[i] - q.x[i]));
  return d;
}

struct AscentResult {
  ModelParams params;
  double value = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

// Projected gradient ascent with Armijo backtracking on the per-post mean
// log-likelihood.
AscentResult ascend(const Replay& replay, double lambda, ModelParams start,
                    bool null_model, std::size_t max_iters, double tolerance) {
  const double norm = 1.0 / static_cast<double>(replay.steps.size());
  auto value = [&](const ModelParams& p) { return norm * log_likelihood(p, replay, lambda); };

  ModelParams current = project_model(start, null_model);
  double f = value(current);
  double step = 1.0;
  AscentResult out;
  for (std::size_t it = 1; it <= max_iters; ++it) {
    out.iterations = it;
    ModelParams g = log_likelihood_gradient(current, replay, lambda);
    for (double& v : g.a) v *= norm;
    g.a_u *= norm;
    for (double& v : g.x) v *= norm;

    bool moved = false;
    ModelParams next;
    double f_next = f;
    while (step > 1e-14) {
      ModelParams trial = current;
      for (std::size_t i = 0; i < trial.a.size(); ++i) trial.a[i] += step * g.a[i];
      trial.a_u += step * g.a_u;
      for (std::size_t i = 0; i < trial.x.size(); ++i) trial.x[i] += step * g.x[i];
      next = project_model(trial, null_model);
      f_next = value(next);
      if (f_next >= f + 1e-4 * dot_step(g, current, next)) {
        moved = true;
        break;
      }
      step *= 0.5;
    }
    if (!moved) {
      out.converged = true;
      break;
    }
    const double change = max_abs_diff(next, current);
    current = std::move(next);
    f = f_next;
    if (change < tolerance) {
      out.converged = true;
      break;
    }
    step = std::min(step * 2.0, 1e3);
  }
  out.params = std::move(current);
  out.value = f / norm;
  return out;
}

ModelParams model_from_loss(const LossParams& p) {
  ModelParams m{p.a, p.a_u, std::vector<double>(p.z.size(), 0.5)};
  if (p.a_u >= kSelfWeightGuard) {
    for (std::size_t c = 0; c < p.z.size(); ++c) m.x[c] = std::clamp(p.z[c] / p.a_u, 0.0, 1.0);
  }
  return m;
}

EstimationResult run_mle(const Replay& replay, const EstimationConfig& cfg,
                         std::span<const ModelParams> extra_starts, bool null_model) {
  cfg.validate();
  if (replay.steps.empty()) throw StructuralError("likelihood fit needs at least one post");
  const std::size_t topics = replay.topic_count;
  const std::size_t followers = replay.follower_count;

  std::vector<ModelParams> starts(extra_starts.begin(), extra_starts.end());
  Rng rng(derive_seed(cfg.seed, 0x3117));
  for (std::size_t s = 0; s < cfg.mle_starts; ++s) {
    auto w = rng.dirichlet(followers + 1, 1.0);
    const double self = w.back();
    w.pop_back();
    std::vector<double> x(topics);
    for (double& v : x) v = rng.uniform();
    starts.push_back({std::move(w), self, std::move(x)});
  }
  if (null_model) {
    starts.push_back({std::vector<double>(followers, 0.0), 1.0, std::vector<double>(topics, 0.5)});
  } else {
    EstimationConfig warm = cfg;
    warm.solver = SolverKind::Subgradient;
    warm.variant = EstimatorKind::PointEstimate;
    const LossProblem problem = point_loss_problem(replay);
    const EstimationResult lin = fit_linear_loss(problem, warm);
    starts.push_back(model_from_loss(
        {std::vector<double>(lin.weights.followers().begin(), lin.weights.followers().end()),
         lin.weights.self(), lin.z_hat}));
  }

  AscentResult best;
  best.value = -std::numeric_limits<double>::infinity();
  std::size_t total_iters = 0;
  for (const auto& start : starts) {
    if (start.a.size() != followers || start.x.size() != topics) {
      throw StructuralError("MLE start has the wrong dimensions");
    }
    AscentResult r =
        ascend(replay, cfg.lambda, start, null_model, cfg.mle_max_iters, cfg.tolerance);
    total_iters += r.iterations;
    if (r.value > best.value) best = std::move(r);
  }

  EstimationResult out = make_result(best.params);
  out.objective = best.value;
  out.iterations = total_iters;
  out.converged = best.converged;
  return out;
}

}  // namespace

EstimationResult fit_mle(const Replay& replay, const EstimationConfig& cfg,
                         std::span<const ModelParams> extra_starts) {
  return run_mle(replay, cfg, extra_starts, false);
}

EstimationResult fit_mle(const FeedbackLog& log, const EstimationConfig& cfg) {
  cfg.validate();
  return fit_mle(replay_estimates(log, cfg.prior), cfg);
}

EstimationResult fit_mle_null(const Replay& replay, const EstimationConfig& cfg) {
  return run_mle(replay, cfg, {}, true);
}

// ---------------------------------------------------------------------------
// Accuracy
// ---------------------------------------------------------------------------

SquaredError squared_error(const PreferenceScenario& truth, const EstimationResult& fit) {
  const auto a = truth.weights().followers();
  const auto a_hat = fit.weights.followers();
  if (a.size() != a_hat.size() || truth.x().size() != fit.x_hat.size()) {
    throw StructuralError("fit and ground truth have different dimensions");
  }
  SquaredError e;
  for (std::size_t v = 0; v < a.size(); ++v) e.a += (a[v] - a_hat[v]) * (a[v] - a_hat[v]);
  const double du = truth.weights().self() - fit.weights.self();
  e.a_u = du * du;
  for (std::size_t c = 0; c < fit.x_hat.size(); ++c) {
    const double d = truth.x()[c] - fit.x_hat[c];
    e.x += d * d;
  }
  return e;
}

double rmse(const PreferenceScenario& truth, const EstimationResult& fit) {
  return std::sqrt(squared_error(truth, fit).total());
}

double aggregate_rmse(std::span<const SquaredError> errors) {
  if (errors.empty()) throw StructuralError("aggregate RMSE of no fits");
  SquaredError mean;
  for (const auto& e : errors) {
    mean.a += e.a;
    mean.a_u += e.a_u;
    mean.x += e.x;
  }
  const double n = static_cast<double>(errors.size());
  return std::sqrt(mean.a / n + mean.a_u / n + mean.x / n);
}

}  // namespace feedback
