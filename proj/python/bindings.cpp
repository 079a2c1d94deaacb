#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "feedback/cli.hpp"
#include "feedback/event_log.hpp"
#include "feedback/hypothesis.hpp"
#include "feedback/io.hpp"
#include "feedback/simulation.hpp"
#include "feedback/special.hpp"

namespace py = pybind11;
using namespace feedback;

namespace {

// JSON documents cross the boundary as Python objects via the json module.
py::object to_python(const io::Json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

FeedbackLog parse_log(const std::string& text) {
  std::istringstream in(text);
  return io::parse_event_log(in);
}

EstimationConfig estimation_config(double lambda, const std::string& variant,
                                   const std::string& solver, std::size_t samples,
                                   std::uint64_t seed) {
  EstimationConfig cfg;
  cfg.lambda = lambda;
  cfg.variant = parse_estimator(variant);
  if (solver != "mle") cfg.solver = parse_solver(solver);
  cfg.samples = samples;
  cfg.seed = seed;
  cfg.validate();
  return cfg;
}

PolicyConfig policy_config(const std::string& estimator, bool external,
                           std::optional<double> softmax_lambda, double alpha, double beta) {
  PolicyConfig p;
  p.estimator = parse_estimator(estimator);
  p.use_external_feedback = external;
  p.softmax_lambda = softmax_lambda;
  p.prior = BetaPrior{alpha, beta};
  return p;
}

ScenarioGenConfig generator(std::size_t topics, std::size_t followers, std::size_t horizon,
                            double mu_bar, double gamma) {
  ScenarioGenConfig g;
  g.topics = topics;
  g.followers = followers;
  g.horizon = horizon;
  g.mu_bar = mu_bar;
  g.gamma = gamma;
  g.validate();
  return g;
}

py::dict simulate(std::size_t topics, std::size_t followers, std::size_t horizon, double mu_bar,
                  double gamma, const std::string& estimator, bool external,
                  std::optional<double> softmax_lambda, double alpha, double beta,
                  std::uint64_t seed) {
  const ScenarioGenConfig g = generator(topics, followers, horizon, mu_bar, gamma);
  const PolicyConfig p = policy_config(estimator, external, softmax_lambda, alpha, beta);
  // Stream 0 of the master seed, matching run 0 of regret().
  Rng rng(derive_seed(seed, 0));
  const PreferenceScenario scenario = sample_scenario(g, rng);
  const Trajectory trajectory = run_episode(scenario, p, rng);
  py::dict out;
  out["log"] = io::event_log_string(to_feedback_log(trajectory));
  out["scenario"] = to_python(io::to_json(scenario));
  out["regret"] = compute_regret(trajectory, scenario).cumulative_regret;
  return out;
}

py::dict regret(std::size_t topics, std::size_t followers, std::size_t horizon, double mu_bar,
                double gamma, const std::string& estimator, bool external,
                std::optional<double> softmax_lambda, double alpha, double beta,
                std::size_t runs, std::uint64_t seed, std::size_t threads) {
  const ScenarioGenConfig g = generator(topics, followers, horizon, mu_bar, gamma);
  const PolicyConfig p = policy_config(estimator, external, softmax_lambda, alpha, beta);
  RegretTrace trace;
  {
    py::gil_scoped_release release;
    trace = monte_carlo_regret(g, p, runs, seed, threads);
  }
  py::dict out;
  out["mean"] = trace.cumulative_regret;
  out["stderr"] = trace.standard_error;
  out["runs"] = trace.runs;
  return out;
}

py::object estimate(const std::string& log_text, const std::string& solver,
                    const std::string& variant, double lambda, std::size_t samples,
                    std::uint64_t seed) {
  const FeedbackLog log = parse_log(log_text);
  const EstimationConfig cfg = estimation_config(lambda, variant, solver, samples, seed);
  const EstimationResult r = solver == "mle" ? fit_mle(log, cfg) : fit_linear_loss(log, cfg);
  return to_python(io::to_json(r));
}

py::object llr_test(const std::string& log_text, double lambda, std::vector<double> levels,
                    std::optional<int> dof, std::uint64_t seed) {
  const FeedbackLog log = parse_log(log_text);
  EstimationConfig cfg;
  cfg.lambda = lambda;
  cfg.seed = seed;
  cfg.validate();
  TestOptions opts;
  opts.levels = std::move(levels);
  if (dof) opts.dof = *dof;
  return to_python(io::to_json(llr_statistic(log, cfg, opts)));
}

py::dict lock_in(std::size_t horizon, std::size_t runs, std::uint64_t seed, std::size_t threads) {
  LockInSummary s;
  {
    py::gil_scoped_release release;
    s = lock_in_walk(horizon, runs, seed, threads);
  }
  py::dict out;
  out["mean_worse_posts"] = s.mean_worse_posts;
  out["stderr_worse_posts"] = s.stderr_worse_posts;
  out["mean_regret"] = s.mean_regret;
  out["stderr_regret"] = s.stderr_regret;
  return out;
}

py::tuple cli(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int status = run_command(args, out, err);
  return py::make_tuple(status, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Simulation, estimation and testing for feedback-driven posting.";

  // Translators run newest first, so the subclass is registered last.
  const auto base = py::register_exception<Error>(m, "FeedbackError", PyExc_ValueError);
  py::register_exception<UntestableLogError>(m, "UntestableLogError", base.ptr());

  m.def("simulate", &simulate, py::arg("topics") = 10, py::arg("followers") = 10,
        py::arg("horizon") = 1000, py::arg("mu_bar") = 0.0, py::arg("gamma") = 0.8,
        py::arg("estimator") = "point", py::arg("external") = false,
        py::arg("softmax_lambda") = py::none(), py::arg("prior_alpha") = 3.0,
        py::arg("prior_beta") = 3.0, py::arg("seed") = 0,
        "Simulates one user; returns the event log (JSONL text), scenario and regret path.");
  m.def("regret", &regret, py::arg("topics") = 10, py::arg("followers") = 10,
        py::arg("horizon") = 1000, py::arg("mu_bar") = 0.0, py::arg("gamma") = 0.8,
        py::arg("estimator") = "point", py::arg("external") = false,
        py::arg("softmax_lambda") = py::none(), py::arg("prior_alpha") = 3.0,
        py::arg("prior_beta") = 3.0, py::arg("runs") = 200, py::arg("seed") = 0,
        py::arg("threads") = 0, "Monte Carlo mean cumulative regret and its standard error.");
  m.def("estimate", &estimate, py::arg("log"), py::arg("solver") = "subgradient",
        py::arg("variant") = "point", py::arg("lambda_") = 10.0, py::arg("samples") = 10,
        py::arg("seed") = 0, "Fits utility weights to an event log given as JSONL text.");
  m.def("llr_test", &llr_test, py::arg("log"), py::arg("lambda_") = 10.0,
        py::arg("levels") = std::vector<double>{0.01, 0.05, 0.1}, py::arg("dof") = py::none(),
        py::arg("seed") = 0, "Likelihood-ratio test of feedback use on one event log.");
  m.def("lock_in_walk", &lock_in, py::arg("horizon") = 1000, py::arg("runs") = 1000,
        py::arg("seed") = 0, py::arg("threads") = 0,
        "Worse-topic post counts for point estimates on the two-topic construction.");
  m.def("chi2_survival", &chi2_survival, py::arg("x"), py::arg("dof"));
  m.def("run_command", &cli, py::arg("args"),
        "Runs a feedback_bandit subcommand; returns (status, stdout, stderr).");
}
