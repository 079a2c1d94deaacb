#include "feedback/simulation.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

namespace feedback {

void ScenarioGenConfig::validate() const {
  if (topics < 1 || followers < 1) {
    throw StructuralError("scenario generator needs K >= 1 and at least one follower");
  }
  if (!(gamma > 0.0)) throw StructuralError("Dirichlet concentration must be > 0");
  if (!(q_beta.first > 0.0) || !(q_beta.second > 0.0) || !(x_beta.first > 0.0) ||
      !(x_beta.second > 0.0)) {
    throw StructuralError("Beta shape parameters must be > 0");
  }
  if (!(mu_bar >= 0.0) || !std::isfinite(mu_bar)) {
    throw StructuralError("mean external rate must be >= 0");
  }
}

PreferenceScenario sample_scenario(const ScenarioGenConfig& cfg, Rng& rng) {
  cfg.validate();
  auto w = rng.dirichlet(cfg.followers + 1, cfg.gamma);
  const double self = w.back();
  w.pop_back();

  Matrix q(cfg.topics, cfg.followers);
  for (double& v : q.values()) v = rng.beta(cfg.q_beta.first, cfg.q_beta.second);
  std::vector<double> x(cfg.topics);
  for (double& v : x) v = rng.beta(cfg.x_beta.first, cfg.x_beta.second);
  // Always consume the uniforms so that scenarios for different mu_bar share
  // every other draw.
  Matrix mu(cfg.topics, cfg.followers);
  for (double& v : mu.values()) v = 2.0 * cfg.mu_bar * rng.uniform();

  return PreferenceScenario(UtilityWeights(std::move(w), self),
                            PreferenceMatrix(std::move(q)), OwnPreferences(std::move(x)),
                            std::move(mu), cfg.horizon);
}

std::uint64_t poisson_draw(double rate, Rng& rng) {
  if (!(rate >= 0.0) || !std::isfinite(rate)) {
    throw StructuralError("Poisson rate must be finite and >= 0");
  }
  return rng.poisson(rate);
}

namespace {

std::vector<double> step_gaps(const PreferenceScenario& scenario) {
  const auto scores =
      topic_scores(scenario.weights(), scenario.q().values(), scenario.x().values());
  const double best = scores[argmax_lowest(scores)];
  std::vector<double> gaps(scores.size());
  for (std::size_t c = 0; c < scores.size(); ++c) gaps[c] = best - scores[c];
  return gaps;
}

class RegretAccumulator final : public EpisodeObserver {
 public:
  RegretAccumulator(std::vector<double> gaps, std::span<double> out)
      : gaps_(std::move(gaps)), out_(out) {}

  void on_post(std::size_t step, TopicId topic) override {
    total_ += gaps_[topic.index];
    out_[step] = total_;
  }

 private:
  std::vector<double> gaps_;
  std::span<double> out_;
  double total_ = 0.0;
};

RegretTrace average(const std::vector<std::vector<double>>& traces, std::size_t horizon) {
  RegretTrace out;
  out.runs = traces.size();
  out.cumulative_regret.assign(horizon, 0.0);
  out.standard_error.assign(horizon, 0.0);
  const double n = static_cast<double>(traces.size());
  for (std::size_t t = 0; t < horizon; ++t) {
    double sum = 0.0;
    for (const auto& tr : traces) sum += tr[t];
    const double mean = sum / n;
    double ss = 0.0;
    for (const auto& tr : traces) ss += (tr[t] - mean) * (tr[t] - mean);
    out.cumulative_regret[t] = mean;
    out.standard_error[t] = traces.size() > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0;
  }
  return out;
}

std::string describe(const PolicyConfig& p) {
  std::ostringstream os;
  os.precision(17);
  os << "estimator=" << to_string(p.estimator) << ";alpha=" << p.prior.alpha
     << ";beta=" << p.prior.beta << ";external=" << p.use_external_feedback;
  if (p.softmax_lambda) os << ";softmax=" << *p.softmax_lambda;
  return os.str();
}

std::string describe(const ScenarioGenConfig& c) {
  std::ostringstream os;
  os.precision(17);
  os << "K=" << c.topics << ";N=" << c.followers << ";gamma=" << c.gamma << ";q=("
     << c.q_beta.first << "," << c.q_beta.second << ");x=(" << c.x_beta.first << ","
     << c.x_beta.second << ");mu_bar=" << c.mu_bar << ";T=" << c.horizon;
  return os.str();
}

std::string describe(const PreferenceScenario& s) {
  std::ostringstream os;
  os.precision(17);
  os << "T=" << s.horizon() << ";a=";
  for (double a : s.weights().followers()) os << a << ",";
  os << ";au=" << s.weights().self() << ";q=";
  for (double v : s.q().values().values()) os << v << ",";
  os << ";x=";
  for (double v : s.x().values()) os << v << ",";
  os << ";mu=";
  for (double v : s.external_rates().values()) os << v << ",";
  return os.str();
}

}  // namespace

RegretTrace compute_regret(const Trajectory& trajectory,
                           const PreferenceScenario& scenario) {
  if (trajectory.topic_count != scenario.topics() ||
      trajectory.follower_count != scenario.followers()) {
    throw StructuralError("trajectory does not belong to this scenario");
  }
  const auto gaps = step_gaps(scenario);
  RegretTrace out;
  out.cumulative_regret.resize(trajectory.steps());
  out.standard_error.assign(trajectory.steps(), 0.0);
  out.scenario_digest = digest_hex(describe(scenario));
  double total = 0.0;
  for (std::size_t t = 0; t < trajectory.steps(); ++t) {
    const std::size_t c = trajectory.topics[t].index;
    if (c >= gaps.size()) throw StructuralError("trajectory topic out of range");
    total += gaps[c];
    out.cumulative_regret[t] = total;
  }
  return out;
}

std::size_t default_thread_count() {
  if (const char* env = std::getenv("FEEDBACK_BANDIT_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && n >= 1) return static_cast<std::size_t>(n);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& body) {
  if (threads == 0) threads = default_thread_count();
  threads = std::min(threads, count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

RegretTrace monte_carlo_regret(const ScenarioGenConfig& cfg, const PolicyConfig& policy,
                               std::size_t runs, std::uint64_t master_seed,
                               std::size_t threads) {
  if (runs < 1) throw StructuralError("monte carlo needs at least one run");
  cfg.validate();
  std::vector<std::vector<double>> traces(runs, std::vector<double>(cfg.horizon, 0.0));
  parallel_for(runs, threads, [&](std::size_t i) {
    Rng rng(derive_seed(master_seed, i));
    const PreferenceScenario scenario = sample_scenario(cfg, rng);
    RegretAccumulator acc(step_gaps(scenario), traces[i]);
    simulate_episode(scenario, policy, rng, acc);
  });
  RegretTrace out = average(traces, cfg.horizon);
  out.scenario_digest =
      digest_hex(describe(cfg) + "|" + describe(policy) + "|seed=" + std::to_string(master_seed));
  return out;
}

RegretTrace monte_carlo_regret(const PreferenceScenario& scenario,
                               const PolicyConfig& policy, std::size_t runs,
                               std::uint64_t master_seed, std::size_t threads) {
  if (runs < 1) throw StructuralError("monte carlo needs at least one run");
  const auto gaps = step_gaps(scenario);
  std::vector<std::vector<double>> traces(runs,
                                          std::vector<double>(scenario.horizon(), 0.0));
  parallel_for(runs, threads, [&](std::size_t i) {
    Rng rng(derive_seed(master_seed, i));
    RegretAccumulator acc(gaps, traces[i]);
    simulate_episode(scenario, policy, rng, acc);
  });
  RegretTrace out = average(traces, scenario.horizon());
  out.scenario_digest = digest_hex(describe(scenario) + "|" + describe(policy) +
                                   "|seed=" + std::to_string(master_seed));
  return out;
}

PreferenceScenario lock_in_scenario(std::size_t horizon, double q_good, double x_common) {
  return PreferenceScenario(UtilityWeights({0.5}, 0.5),
                            PreferenceMatrix(Matrix::from_rows({{q_good}, {0.5}})),
                            OwnPreferences({x_common, x_common}), Matrix(2, 1, 0.0),
                            horizon);
}

namespace {

class TopicCounter final : public EpisodeObserver {
 public:
  explicit TopicCounter(std::size_t topic) : topic_(topic) {}
  void on_post(std::size_t, TopicId topic) override {
    if (topic.index == topic_) ++count_;
  }
  std::size_t count() const { return count_; }

 private:
  std::size_t topic_;
  std::size_t count_ = 0;
};

}  // namespace

LockInSummary lock_in_walk(std::size_t horizon, std::size_t runs, std::uint64_t master_seed,
                           std::size_t threads) {
  if (runs < 1) throw StructuralError("lock-in walk needs at least one run");
  const PreferenceScenario scenario = lock_in_scenario(horizon);
  const PolicyConfig policy{EstimatorKind::PointEstimate, BetaPrior{3.0, 3.0}, false, {}};
  const double gap = (scenario.q()(0, 0) - scenario.q()(1, 0)) / 2.0;

  std::vector<double> worse(runs, 0.0);
  parallel_for(runs, threads, [&](std::size_t i) {
    Rng rng(derive_seed(master_seed, i));
    TopicCounter counter(1);
    simulate_episode(scenario, policy, rng, counter);
    worse[i] = static_cast<double>(counter.count());
  });

  const double n = static_cast<double>(runs);
  double sum = 0.0;
  for (double w : worse) sum += w;
  const double mean = sum / n;
  double ss = 0.0;
  for (double w : worse) ss += (w - mean) * (w - mean);
  const double se = runs > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0;

  LockInSummary out;
  out.horizon = horizon;
  out.runs = runs;
  out.mean_worse_posts = mean;
  out.stderr_worse_posts = se;
  out.mean_regret = mean * gap;
  out.stderr_regret = se * gap;
  return out;
}

std::string digest_hex(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace feedback
