#include "feedback/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "feedback/error.hpp"
#include "feedback/estimation.hpp"
#include "feedback/event_log.hpp"
#include "feedback/hypothesis.hpp"
#include "feedback/io.hpp"
#include "feedback/policy.hpp"
#include "feedback/simulation.hpp"

namespace feedback {

namespace {

using io::Json;
namespace fs = std::filesystem;

// Raised while resolving flags into a configuration; reported as a usage error.
class UsageError : public Error {
 public:
  using Error::Error;
};

struct PriorFlags {
  double alpha = 3.0;
  double beta = 3.0;

  BetaPrior resolve() const {
    BetaPrior p{alpha, beta};
    try {
      p.validate();
    } catch (const StructuralError& e) {
      throw UsageError(e.what());
    }
    return p;
  }
};

void add_prior_flags(CLI::App* cmd, PriorFlags& prior) {
  cmd->add_option("--prior-alpha", prior.alpha, "Beta prior alpha")->capture_default_str();
  cmd->add_option("--prior-beta", prior.beta, "Beta prior beta")->capture_default_str();
}

Json prior_json(const BetaPrior& p) { return Json{{"alpha", p.alpha}, {"beta", p.beta}}; }

bool parse_switch(const std::string& text, const char* flag) {
  if (text == "on" || text == "true" || text == "1") return true;
  if (text == "off" || text == "false" || text == "0") return false;
  throw UsageError(std::string(flag) + " expects on or off, got '" + text + "'");
}

EstimatorKind resolve_estimator(const std::string& text) {
  try {
    return parse_estimator(text);
  } catch (const StructuralError& e) {
    throw UsageError(e.what());
  }
}

void write_text_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open '" + path.string() + "' for writing");
  f << text;
  if (!f) throw Error("failed writing '" + path.string() + "'");
}

std::string pretty(const Json& j) { return j.dump(2) + "\n"; }

fs::path sidecar_path(const fs::path& artifact) {
  return fs::path(artifact.string() + ".meta.json");
}

Json envelope(const char* command, const Json& config) {
  Json j;
  j["command"] = command;
  j["config"] = config;
  j["config_digest"] = io::config_digest(config);
  return j;
}

std::size_t resolve_threads(std::size_t flag) {
  return flag == 0 ? default_thread_count() : flag;
}

// --- simulate ---------------------------------------------------------------

struct SimulateFlags {
  std::size_t topics = 10;
  std::size_t followers = 10;
  std::size_t horizon = 1000;
  double mu_bar = 0.0;
  double gamma = 0.8;
  std::string estimator = "point";
  std::string external = "off";
  std::optional<double> lambda;
  PriorFlags prior;
  std::uint64_t seed = 0;
  std::string scenario_in;
  std::string out;
  std::string trajectory_out;
};

void add_simulate(CLI::App& app, SimulateFlags& f) {
  auto* cmd = app.add_subcommand("simulate", "Simulate one user and write the event log");
  cmd->add_option("--K,--topics", f.topics, "number of topics")->capture_default_str();
  cmd->add_option("--N,--followers", f.followers, "number of followers")->capture_default_str();
  cmd->add_option("--T,--horizon", f.horizon, "number of posts")->capture_default_str();
  cmd->add_option("--mu-bar", f.mu_bar, "external feedback rates ~ Uniform[0, 2 mu_bar]")
      ->capture_default_str();
  cmd->add_option("--gamma", f.gamma, "Dirichlet concentration of the weights")
      ->capture_default_str();
  cmd->add_option("--estimator", f.estimator, "point | posterior")->capture_default_str();
  cmd->add_option("--external", f.external, "use feedback to others: on | off")
      ->capture_default_str();
  cmd->add_option("--lambda", f.lambda, "choose topics by softmax at this temperature");
  add_prior_flags(cmd, f.prior);
  cmd->add_option("--seed", f.seed, "master seed")->capture_default_str();
  cmd->add_option("--scenario", f.scenario_in, "scenario JSON to use instead of sampling one");
  cmd->add_option("--out", f.out, "event log (JSON lines)")->required();
  cmd->add_option("--trajectory", f.trajectory_out, "optional trajectory JSON");
}

int run_simulate(const SimulateFlags& f, std::ostream& out) {
  ScenarioGenConfig gen;
  gen.topics = f.topics;
  gen.followers = f.followers;
  gen.horizon = f.horizon;
  gen.mu_bar = f.mu_bar;
  gen.gamma = f.gamma;
  PolicyConfig policy;
  policy.estimator = resolve_estimator(f.estimator);
  policy.prior = f.prior.resolve();
  policy.use_external_feedback = parse_switch(f.external, "--external");
  policy.softmax_lambda = f.lambda;
  if (f.lambda && !(*f.lambda >= 0.0)) throw UsageError("--lambda must be >= 0");

  Rng rng(derive_seed(f.seed, 0));
  std::optional<PreferenceScenario> scenario;
  Json config;
  config["seed"] = f.seed;
  if (f.scenario_in.empty()) {
    try {
      gen.validate();
    } catch (const StructuralError& e) {
      throw UsageError(e.what());
    }
    scenario = sample_scenario(gen, rng);
    config["scenario_source"] = "sampled";
    config["topics"] = gen.topics;
    config["followers"] = gen.followers;
    config["gamma"] = gen.gamma;
    config["mu_bar"] = gen.mu_bar;
  } else {
    std::ifstream in(f.scenario_in);
    if (!in) throw Error("cannot open scenario '" + f.scenario_in + "'");
    Json doc;
    try {
      doc = Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw Error("scenario '" + f.scenario_in + "' is not valid JSON: " + e.what());
    }
    if (doc.contains("scenario")) doc = doc["scenario"];
    scenario = io::scenario_from_json(doc).with_horizon(f.horizon);
    config["scenario_source"] = f.scenario_in;
  }
  config["horizon"] = f.horizon;
  config["estimator"] = std::string(to_string(policy.estimator));
  config["external"] = policy.use_external_feedback;
  config["softmax_lambda"] = f.lambda ? Json(*f.lambda) : Json(nullptr);
  config["prior"] = prior_json(policy.prior);

  const Trajectory trajectory = run_episode(*scenario, policy, rng);
  const FeedbackLog log = to_feedback_log(trajectory);
  const RegretTrace regret = compute_regret(trajectory, *scenario);

  Json meta = envelope("simulate", config);
  meta["scenario"] = io::to_json(*scenario);
  meta["final_regret"] = regret.final_value();

  const fs::path log_path(f.out);
  write_text_file(log_path, io::event_log_string(log));
  write_text_file(sidecar_path(log_path), pretty(meta));
  if (!f.trajectory_out.empty()) {
    Json doc = meta;
    doc["trajectory"] = io::to_json(trajectory);
    write_text_file(f.trajectory_out, pretty(doc));
  }

  Json summary = envelope("simulate", config);
  summary["events"] = log.events.size();
  summary["posts"] = log.own_post_count();
  summary["final_regret"] = regret.final_value();
  summary["event_log"] = f.out;
  out << pretty(summary);
  return kExitOk;
}

// --- regret -----------------------------------------------------------------

struct RegretFlags {
  std::string estimator = "point";
  std::string external = "off";
  std::size_t topics = 10;
  std::size_t followers = 10;
  std::size_t horizon = 1000;
  double mu_bar = 0.0;
  double gamma = 0.8;
  std::optional<double> lambda;
  PriorFlags prior;
  std::size_t runs = 200;
  std::uint64_t seed = 0;
  std::size_t threads = 0;
  std::string out;
  std::string grid;
  std::string out_dir;
};

void add_regret(CLI::App& app, RegretFlags& f) {
  auto* cmd = app.add_subcommand("regret", "Monte Carlo regret curves as CSV");
  cmd->add_option("--estimator", f.estimator, "point | posterior")->capture_default_str();
  cmd->add_option("--external", f.external, "use feedback to others: on | off")
      ->capture_default_str();
  cmd->add_option("--K,--topics", f.topics, "number of topics")->capture_default_str();
  cmd->add_option("--N,--followers", f.followers, "number of followers")->capture_default_str();
  cmd->add_option("--T,--horizon", f.horizon, "number of posts")->capture_default_str();
  cmd->add_option("--mu-bar", f.mu_bar, "external feedback rates ~ Uniform[0, 2 mu_bar]")
      ->capture_default_str();
  cmd->add_option("--gamma", f.gamma, "Dirichlet concentration of the weights")
      ->capture_default_str();
  cmd->add_option("--lambda", f.lambda, "choose topics by softmax at this temperature");
  add_prior_flags(cmd, f.prior);
  cmd->add_option("--runs", f.runs, "independent users")->capture_default_str();
  cmd->add_option("--seed", f.seed, "master seed")->capture_default_str();
  cmd->add_option("--threads", f.threads, "worker count (0: FEEDBACK_BANDIT_THREADS or all)");
  cmd->add_option("--out", f.out, "CSV path for a single curve");
  cmd->add_option("--grid", f.grid, "topics (K sweep, no external feedback) | mu-bar (mu_bar sweep, external feedback)");
  cmd->add_option("--out-dir", f.out_dir, "directory for --grid CSVs");
}

struct RegretCell {
  std::string name;
  ScenarioGenConfig gen;
  PolicyConfig policy;
};

Json regret_config(const RegretCell& cell, const RegretFlags& f) {
  Json c;
  c["seed"] = f.seed;
  c["runs"] = f.runs;
  c["estimator"] = std::string(to_string(cell.policy.estimator));
  c["external"] = cell.policy.use_external_feedback;
  c["topics"] = cell.gen.topics;
  c["followers"] = cell.gen.followers;
  c["horizon"] = cell.gen.horizon;
  c["mu_bar"] = cell.gen.mu_bar;
  c["gamma"] = cell.gen.gamma;
  c["softmax_lambda"] =
      cell.policy.softmax_lambda ? Json(*cell.policy.softmax_lambda) : Json(nullptr);
  c["prior"] = prior_json(cell.policy.prior);
  return c;
}

Json run_regret_cell(const RegretCell& cell, const RegretFlags& f, const fs::path& csv,
                     std::size_t threads) {
  const RegretTrace trace = monte_carlo_regret(cell.gen, cell.policy, f.runs, f.seed, threads);
  std::ostringstream body;
  io::write_regret_csv(body, trace);
  const Json config = regret_config(cell, f);
  Json meta = envelope("regret", config);
  meta["csv"] = csv.filename().string();
  meta["final_mean_regret"] = trace.final_value();
  meta["final_stderr"] = trace.standard_error.empty() ? 0.0 : trace.standard_error.back();
  write_text_file(csv, body.str());
  write_text_file(sidecar_path(csv), pretty(meta));
  meta["csv"] = csv.string();
  return meta;
}

int run_regret(const RegretFlags& f, std::ostream& out) {
  RegretCell base;
  base.gen.topics = f.topics;
  base.gen.followers = f.followers;
  base.gen.horizon = f.horizon;
  base.gen.mu_bar = f.mu_bar;
  base.gen.gamma = f.gamma;
  base.policy.estimator = resolve_estimator(f.estimator);
  base.policy.prior = f.prior.resolve();
  base.policy.use_external_feedback = parse_switch(f.external, "--external");
  base.policy.softmax_lambda = f.lambda;
  if (f.runs == 0) throw UsageError("--runs must be >= 1");

  std::vector<RegretCell> cells;
  if (f.grid.empty()) {
    if (f.out.empty()) throw UsageError("regret needs --out (or --grid with --out-dir)");
    base.name = f.out;
    cells.push_back(base);
  } else {
    if (f.out_dir.empty()) throw UsageError("--grid needs --out-dir");
    for (auto est : {EstimatorKind::PointEstimate, EstimatorKind::PosteriorSample}) {
      if (f.grid == "topics") {
        for (std::size_t k : {10, 20, 30}) {
          RegretCell c = base;
          c.policy.estimator = est;
          c.policy.use_external_feedback = false;
          c.gen.mu_bar = 0.0;
          c.gen.topics = k;
          c.name = "topics_" + std::string(to_string(est)) + "_K" + std::to_string(k) + ".csv";
          cells.push_back(c);
        }
      } else if (f.grid == "mu-bar") {
        for (const char* mu : {"0.5", "1", "2"}) {
          RegretCell c = base;
          c.policy.estimator = est;
          c.policy.use_external_feedback = true;
          c.gen.mu_bar = std::stod(mu);
          c.name = "mu_bar_" + std::string(to_string(est)) + "_mu" + mu + ".csv";
          cells.push_back(c);
        }
      } else {
        throw UsageError("--grid expects topics or mu-bar, got '" + f.grid + "'");
      }
    }
  }
  for (const auto& c : cells) {
    try {
      c.gen.validate();
    } catch (const StructuralError& e) {
      throw UsageError(e.what());
    }
  }

  const std::size_t threads = resolve_threads(f.threads);
  if (f.grid.empty()) {
    out << pretty(run_regret_cell(cells.front(), f, f.out, threads));
    return kExitOk;
  }
  Json index = Json::array();
  for (const auto& c : cells) {
    index.push_back(run_regret_cell(c, f, fs::path(f.out_dir) / c.name, threads));
  }
  Json summary;
  summary["command"] = "regret";
  summary["grid"] = f.grid;
  summary["cells"] = std::move(index);
  out << pretty(summary);
  return kExitOk;
}

// --- estimate ---------------------------------------------------------------

struct EstimateFlags {
  std::string log;
  std::string solver = "subgradient";
  std::string variant = "point";
  double lambda = 10.0;
  std::size_t samples = 10;
  std::size_t max_iters = 2000;
  double step_scale = 0.5;
  std::size_t mle_starts = 5;
  PriorFlags prior;
  std::uint64_t seed = 0;
  std::size_t topics = 0;
  std::size_t followers = 0;
  std::string out;
};

void add_estimate(CLI::App& app, EstimateFlags& f) {
  auto* cmd = app.add_subcommand("estimate", "Fit utility weights to an event log");
  cmd->add_option("--log", f.log, "event log (JSON lines)")->required();
  cmd->add_option("--solver", f.solver, "subgradient | lp | mle")->capture_default_str();
  cmd->add_option("--variant", f.variant, "estimator the user is assumed to use: point | posterior")
      ->capture_default_str();
  cmd->add_option("--lambda", f.lambda, "softmax temperature (mle)")->capture_default_str();
  cmd->add_option("--samples", f.samples, "posterior draws per post")->capture_default_str();
  cmd->add_option("--max-iters", f.max_iters, "subgradient iterations")->capture_default_str();
  cmd->add_option("--step-scale", f.step_scale, "subgradient step eta_0")->capture_default_str();
  cmd->add_option("--mle-starts", f.mle_starts, "random likelihood starts")
      ->capture_default_str();
  add_prior_flags(cmd, f.prior);
  cmd->add_option("--seed", f.seed, "seed for posterior draws and starts")->capture_default_str();
  cmd->add_option("--topics", f.topics, "minimum topic count");
  cmd->add_option("--followers", f.followers, "minimum follower count");
  cmd->add_option("--out", f.out, "result JSON (stdout when omitted)");
}

EstimationConfig resolve_estimation(double lambda, const std::string& variant,
                                    std::size_t samples, std::size_t max_iters,
                                    double step_scale, std::size_t mle_starts,
                                    const PriorFlags& prior, std::uint64_t seed) {
  EstimationConfig cfg;
  cfg.lambda = lambda;
  cfg.variant = resolve_estimator(variant);
  cfg.samples = samples;
  cfg.max_iters = max_iters;
  cfg.step_scale = step_scale;
  cfg.mle_starts = mle_starts;
  cfg.prior = prior.resolve();
  cfg.seed = seed;
  try {
    cfg.validate();
  } catch (const StructuralError& e) {
    throw UsageError(e.what());
  }
  return cfg;
}

Json estimation_config_json(const EstimationConfig& cfg) {
  Json c;
  c["seed"] = cfg.seed;
  c["lambda"] = cfg.lambda;
  c["variant"] = std::string(to_string(cfg.variant));
  c["samples"] = cfg.samples;
  c["max_iters"] = cfg.max_iters;
  c["step_scale"] = cfg.step_scale;
  c["mle_starts"] = cfg.mle_starts;
  c["mle_max_iters"] = cfg.mle_max_iters;
  c["prior"] = prior_json(cfg.prior);
  return c;
}

int run_estimate(const EstimateFlags& f, std::ostream& out) {
  EstimationConfig cfg = resolve_estimation(f.lambda, f.variant, f.samples, f.max_iters,
                                            f.step_scale, f.mle_starts, f.prior, f.seed);
  const bool mle = f.solver == "mle";
  if (!mle) {
    try {
      cfg.solver = parse_solver(f.solver);
    } catch (const StructuralError& e) {
      throw UsageError(e.what());
    }
  }
  const FeedbackLog log = io::parse_event_log(fs::path(f.log), {f.topics, f.followers});

  Json config = estimation_config_json(cfg);
  config["solver"] = mle ? std::string("mle") : std::string(to_string(cfg.solver));
  config["log"] = f.log;
  config["topics"] = log.topic_count;
  config["followers"] = log.follower_count;

  const EstimationResult result = mle ? fit_mle(log, cfg) : fit_linear_loss(log, cfg);
  Json doc = envelope("estimate", config);
  doc["result"] = io::to_json(result);
  if (f.out.empty()) {
    out << pretty(doc);
  } else {
    write_text_file(f.out, pretty(doc));
  }
  return kExitOk;
}

// --- test -------------------------------------------------------------------

struct TestFlags {
  std::vector<std::string> logs;
  double lambda = 10.0;
  std::optional<int> dof;
  std::vector<double> levels{0.01, 0.05, 0.1};
  std::size_t mle_starts = 5;
  PriorFlags prior;
  std::uint64_t seed = 0;
  std::size_t threads = 0;
  std::string out;
  std::string summary_out;
};

void add_test(CLI::App& app, TestFlags& f) {
  auto* cmd = app.add_subcommand("test", "Likelihood-ratio test of feedback use, per log");
  cmd->add_option("--log", f.logs, "event log; repeat for a cohort")->required();
  cmd->add_option("--lambda", f.lambda, "softmax temperature")->capture_default_str();
  cmd->add_option("--dof", f.dof, "chi-squared degrees of freedom (default: followers)");
  cmd->add_option("--level", f.levels, "significance levels")->capture_default_str();
  cmd->add_option("--mle-starts", f.mle_starts, "random likelihood starts")
      ->capture_default_str();
  add_prior_flags(cmd, f.prior);
  cmd->add_option("--seed", f.seed, "seed for likelihood starts")->capture_default_str();
  cmd->add_option("--threads", f.threads, "worker count (0: FEEDBACK_BANDIT_THREADS or all)");
  cmd->add_option("--out", f.out, "per-log reports as JSON lines (stdout when omitted)");
  cmd->add_option("--summary-out", f.summary_out, "cohort summary JSON");
}

int run_test(const TestFlags& f, std::ostream& out, std::ostream& err) {
  const EstimationConfig cfg = resolve_estimation(f.lambda, "point", 1, 2000, 0.5, f.mle_starts,
                                                  f.prior, f.seed);
  if (f.dof && *f.dof < 1) throw UsageError("--dof must be >= 1");
  for (double level : f.levels) {
    if (!(level > 0.0 && level < 1.0)) throw UsageError("--level must lie in (0, 1)");
  }

  Json config = estimation_config_json(cfg);
  config.erase("variant");
  config.erase("samples");
  config.erase("max_iters");
  config.erase("step_scale");
  config["dof"] = f.dof ? Json(*f.dof) : Json(nullptr);
  config["levels"] = f.levels;
  config["logs"] = f.logs;
  const std::string digest = io::config_digest(config);

  std::vector<FeedbackLog> logs;
  logs.reserve(f.logs.size());
  for (const auto& path : f.logs) logs.push_back(io::parse_event_log(fs::path(path)));

  const std::size_t n = logs.size();
  std::vector<std::optional<TestReport>> reports(n);
  std::vector<std::string> failures(n);
  parallel_for(n, resolve_threads(f.threads), [&](std::size_t i) {
    TestOptions opts;
    opts.user = fs::path(f.logs[i]).stem().string();
    opts.dof = f.dof;
    opts.levels = f.levels;
    try {
      reports[i] = llr_statistic(logs[i], cfg, opts);
    } catch (const UntestableLogError& e) {
      failures[i] = e.what();
    }
  });

  std::string lines;
  std::vector<TestReport> ok;
  Json skipped = Json::array();
  for (std::size_t i = 0; i < n; ++i) {
    if (!reports[i]) {
      err << "skipping " << f.logs[i] << ": " << failures[i] << "\n";
      skipped.push_back({{"log", f.logs[i]}, {"reason", failures[i]}});
      continue;
    }
    Json rec = io::to_json(*reports[i]);
    rec["config_digest"] = digest;
    lines += rec.dump() + "\n";
    ok.push_back(*reports[i]);
  }

  if (f.out.empty()) {
    out << lines;
  } else {
    write_text_file(f.out, lines);
    Json meta = envelope("test", config);
    meta["reports"] = ok.size();
    write_text_file(sidecar_path(f.out), pretty(meta));
  }
  if (!f.summary_out.empty()) {
    Json doc = envelope("test", config);
    doc["summary"] = ok.empty() ? Json(nullptr) : io::to_json(cohort_summary(ok, f.levels));
    doc["skipped"] = std::move(skipped);
    write_text_file(f.summary_out, pretty(doc));
  }
  return ok.empty() ? kExitFailure : kExitOk;
}

// --- a1-walk ----------------------------------------------------------------

struct WalkFlags {
  std::size_t horizon = 1000;
  std::size_t runs = 1000;
  std::uint64_t seed = 0;
  std::size_t threads = 0;
  std::string out;
};

void add_walk(CLI::App& app, WalkFlags& f) {
  auto* cmd = app.add_subcommand(
      "a1-walk", "Two-topic lock-in construction: how often point estimates post the worse topic");
  cmd->add_option("--T,--horizon", f.horizon, "number of posts")->capture_default_str();
  cmd->add_option("--runs", f.runs, "independent runs")->capture_default_str();
  cmd->add_option("--seed", f.seed, "master seed")->capture_default_str();
  cmd->add_option("--threads", f.threads, "worker count (0: FEEDBACK_BANDIT_THREADS or all)");
  cmd->add_option("--out", f.out, "result JSON (stdout when omitted)");
}

int run_walk(const WalkFlags& f, std::ostream& out) {
  if (f.horizon == 0) throw UsageError("--T must be >= 1");
  if (f.runs == 0) throw UsageError("--runs must be >= 1");
  const LockInSummary s = lock_in_walk(f.horizon, f.runs, f.seed, resolve_threads(f.threads));

  Json config;
  config["seed"] = f.seed;
  config["horizon"] = f.horizon;
  config["runs"] = f.runs;
  config["q"] = {0.9, 0.5};
  config["weights"] = {{"follower", 0.5}, {"self", 0.5}};
  config["prior"] = prior_json(BetaPrior{});
  Json doc = envelope("a1-walk", config);
  const double t = static_cast<double>(f.horizon);
  doc["mean_worse_posts"] = s.mean_worse_posts;
  doc["stderr_worse_posts"] = s.stderr_worse_posts;
  doc["mean_worse_fraction"] = s.mean_worse_posts / t;
  doc["stderr_worse_fraction"] = s.stderr_worse_posts / t;
  doc["mean_regret"] = s.mean_regret;
  doc["stderr_regret"] = s.stderr_regret;
  if (f.out.empty()) {
    out << pretty(doc);
  } else {
    write_text_file(f.out, pretty(doc));
  }
  return kExitOk;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Simulate, fit and test feedback-driven posting behaviour", "feedback_bandit"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "expand all help");

  SimulateFlags simulate;
  RegretFlags regret;
  EstimateFlags estimate;
  TestFlags test;
  WalkFlags walk;
  add_simulate(app, simulate);
  add_regret(app, regret);
  add_estimate(app, estimate);
  add_test(app, test);
  add_walk(app, walk);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    const CLI::App* cmd = app.get_subcommands().front();
    const std::string name = cmd->get_name();
    if (name == "simulate") return run_simulate(simulate, out);
    if (name == "regret") return run_regret(regret, out);
    if (name == "estimate") return run_estimate(estimate, out);
    if (name == "test") return run_test(test, out, err);
    return run_walk(walk, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace feedback
