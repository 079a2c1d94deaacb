#include "feedback/lp.hpp"

#include <cmath>
#include <limits>

#include "feedback/error.hpp"

namespace feedback::lp {

std::string_view to_string(Status status) {
  switch (status) {
    case Status::Optimal: return "optimal";
    case Status::Infeasible: return "infeasible";
    case Status::Unbounded: return "unbounded";
    case Status::IterationLimit: return "iteration_limit";
  }
  return "unknown";
}

namespace {

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_((rows + 1) * (cols + 1), 0.0), basis_(rows, 0) {}

  double& at(std::size_t r, std::size_t c) { return data_[r * (cols_ + 1) + c]; }
  double& rhs(std::size_t r) { return at(r, cols_); }
  // Row `rows_` holds reduced costs; its rhs entry is minus the objective.
  double& cost(std::size_t c) { return at(rows_, c); }
  double objective() { return -at(rows_, cols_); }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::vector<std::size_t>& basis() { return basis_; }

  void pivot(std::size_t pr, std::size_t pc) {
    const double inv = 1.0 / at(pr, pc);
    for (std::size_t c = 0; c <= cols_; ++c) at(pr, c) *= inv;
    at(pr, pc) = 1.0;
    for (std::size_t r = 0; r <= rows_; ++r) {
      if (r == pr) continue;
      const double f = at(r, pc);
      if (f == 0.0) continue;
      double* dst = &at(r, 0);
      const double* src = &at(pr, 0);
      for (std::size_t c = 0; c <= cols_; ++c) dst[c] -= f * src[c];
      dst[pc] = 0.0;
    }
    basis_[pr] = pc;
  }

  /// Recomputes the reduced-cost row for costs `c` (size cols) against the
  /// current basis.
  void set_costs(const std::vector<double>& c) {
    for (std::size_t j = 0; j <= cols_; ++j) cost(j) = j < cols_ ? c[j] : 0.0;
    for (std::size_t r = 0; r < rows_; ++r) {
      const double cb = c[basis_[r]];
      if (cb == 0.0) continue;
      for (std::size_t j = 0; j <= cols_; ++j) at(rows_, j) -= cb * at(r, j);
    }
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
  std::vector<std::size_t> basis_;
};

enum class PhaseResult { Optimal, Unbounded, IterationLimit };

// Lexicographic ratio test on the initial-basis columns (the rows of B^-1).
// Distinct rows of B^-1 never tie exactly, so degenerate pivots cannot cycle.
bool lexicographically_smaller(Tableau& tab, const std::vector<std::size_t>& initial_basis,
                               std::size_t enter, std::size_t r, std::size_t s) {
  const double ar = tab.at(r, enter);
  const double as = tab.at(s, enter);
  for (const std::size_t c : initial_basis) {
    const double vr = tab.at(r, c) / ar;
    const double vs = tab.at(s, c) / as;
    if (vr < vs - 1e-12) return true;
    if (vr > vs + 1e-12) return false;
  }
  return tab.basis()[r] < tab.basis()[s];
}

PhaseResult run_phase(Tableau& tab, const std::vector<bool>& allowed,
                      const std::vector<std::size_t>& initial_basis, const Options& opt,
                      double lower_bound, std::size_t& iterations) {
  bool bland = false;
  std::size_t stalled = 0;
  double last_obj = tab.objective();
  for (;;) {
    // Reaching a known lower bound is optimal; further degenerate pivots only add round-off.
    if (tab.objective() <= lower_bound) return PhaseResult::Optimal;
    if (iterations >= opt.max_iterations) return PhaseResult::IterationLimit;
    std::size_t enter = tab.cols();
    double best = -opt.tolerance;
    for (std::size_t j = 0; j < tab.cols(); ++j) {
      if (!allowed[j]) continue;
      const double rc = tab.cost(j);
      if (rc < -opt.tolerance) {
        if (bland) {
          enter = j;
          break;
        }
        if (rc < best) {
          best = rc;
          enter = j;
        }
      }
    }
    if (enter == tab.cols()) return PhaseResult::Optimal;

    std::size_t leave = tab.rows();
    double best_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < tab.rows(); ++r) {
      const double a = tab.at(r, enter);
      if (a <= opt.tolerance) continue;
      const double ratio = std::max(0.0, tab.rhs(r)) / a;
      if (ratio < best_ratio - opt.tolerance) {
        best_ratio = ratio;
        leave = r;
      } else if (ratio <= best_ratio + opt.tolerance &&
                 lexicographically_smaller(tab, initial_basis, enter, r, leave)) {
        leave = r;
      }
    }
    if (leave == tab.rows()) return PhaseResult::Unbounded;

    tab.pivot(leave, enter);
    ++iterations;
    const double obj = tab.objective();
    if (obj < last_obj - opt.tolerance) {
      stalled = 0;
      last_obj = obj;
    } else if (++stalled >= opt.stall_limit) {
      bland = true;
    }
  }
}

}  // namespace

Solution solve(const LinearProgram& program, const Options& options) {
  const std::size_t n = program.variable_count();
  const std::size_t m = program.constraints.size();
  for (const auto& row : program.constraints) {
    if (row.coefficients.size() != n) {
      throw StructuralError("LP constraint width does not match the objective");
    }
  }

  // Normalize to nonnegative right-hand sides and count auxiliary columns.
  std::vector<Constraint> rows = program.constraints;
  std::size_t slack_count = 0;
  std::size_t artificial_count = 0;
  for (auto& row : rows) {
    if (row.rhs < 0.0) {
      for (double& a : row.coefficients) a = -a;
      row.rhs = -row.rhs;
      if (row.relation == Relation::LessEqual) {
        row.relation = Relation::GreaterEqual;
      } else if (row.relation == Relation::GreaterEqual) {
        row.relation = Relation::LessEqual;
      }
    }
    if (row.relation != Relation::Equal) ++slack_count;
    if (row.relation != Relation::LessEqual) ++artificial_count;
  }

  const std::size_t first_slack = n;
  const std::size_t first_artificial = n + slack_count;
  const std::size_t cols = first_artificial + artificial_count;
  Tableau tab(m, cols);
  std::size_t next_slack = first_slack;
  std::size_t next_artificial = first_artificial;
  for (std::size_t r = 0; r < m; ++r) {
    const auto& row = rows[r];
    for (std::size_t j = 0; j < n; ++j) tab.at(r, j) = row.coefficients[j];
    tab.rhs(r) = row.rhs;
    switch (row.relation) {
      case Relation::LessEqual:
        tab.at(r, next_slack) = 1.0;
        tab.basis()[r] = next_slack++;
        break;
      case Relation::GreaterEqual:
        tab.at(r, next_slack++) = -1.0;
        tab.at(r, next_artificial) = 1.0;
        tab.basis()[r] = next_artificial++;
        break;
      case Relation::Equal:
        tab.at(r, next_artificial) = 1.0;
        tab.basis()[r] = next_artificial++;
        break;
    }
  }

  const std::vector<std::size_t> initial_basis = tab.basis();
  Solution sol;
  std::size_t iterations = 0;
  std::vector<bool> allowed(cols, true);

  if (artificial_count > 0) {
    std::vector<double> phase1(cols, 0.0);
    for (std::size_t j = first_artificial; j < cols; ++j) phase1[j] = 1.0;
    tab.set_costs(phase1);
    double scale = 1.0;
    for (const auto& row : rows) scale = std::max(scale, std::fabs(row.rhs));
    // The artificial sum is nonnegative, so reaching round-off level is optimal.
    const PhaseResult r1 =
        run_phase(tab, allowed, initial_basis, options, 1e-12 * scale, iterations);
    sol.iterations = iterations;
    if (r1 == PhaseResult::IterationLimit) {
      sol.status = Status::IterationLimit;
      return sol;
    }
    if (tab.objective() > 1e-7 * scale) {
      sol.status = Status::Infeasible;
      return sol;
    }
    // Drive zero-level artificials out of the basis where possible.
    for (std::size_t r = 0; r < m; ++r) {
      if (tab.basis()[r] < first_artificial) continue;
      for (std::size_t j = 0; j < first_artificial; ++j) {
        if (std::fabs(tab.at(r, j)) > options.tolerance) {
          tab.pivot(r, j);
          break;
        }
      }
    }
    for (std::size_t j = first_artificial; j < cols; ++j) allowed[j] = false;
  }

  std::vector<double> costs(cols, 0.0);
  for (std::size_t j = 0; j < n; ++j) costs[j] = program.objective[j];
  tab.set_costs(costs);
  const PhaseResult r2 = run_phase(tab, allowed, initial_basis, options,
                                   options.objective_lower_bound + options.tolerance, iterations);
  sol.iterations = iterations;
  if (r2 == PhaseResult::Unbounded) {
    sol.status = Status::Unbounded;
    return sol;
  }
  if (r2 == PhaseResult::IterationLimit) {
    sol.status = Status::IterationLimit;
    return sol;
  }

  sol.status = Status::Optimal;
  sol.x.assign(n, 0.0);
  for (std::size_t r = 0; r < m; ++r) {
    if (tab.basis()[r] < n) sol.x[tab.basis()[r]] = std::max(0.0, tab.rhs(r));
  }
  sol.objective = 0.0;
  for (std::size_t j = 0; j < n; ++j) sol.objective += program.objective[j] * sol.x[j];
  return sol;
}

}  // namespace feedback::lp
