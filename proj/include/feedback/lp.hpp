#pragma once

#include <cstddef>
#include <limits>
#include <string_view>
#include <vector>

namespace feedback::lp {

enum class Relation { LessEqual, GreaterEqual, Equal };

struct Constraint {
  std::vector<double> coefficients;
  Relation relation = Relation::LessEqual;
  double rhs = 0.0;
};

/// minimize objective^T x  subject to the constraints and x >= 0.
struct LinearProgram {
  std::vector<double> objective;
  std::vector<Constraint> constraints;

  std::size_t variable_count() const noexcept { return objective.size(); }
};

enum class Status { Optimal, Infeasible, Unbounded, IterationLimit };

std::string_view to_string(Status status);

struct Solution {
  Status status = Status::IterationLimit;
  std::vector<double> x;
  double objective = 0.0;
  std::size_t iterations = 0;
};

struct Options {
  double tolerance = 1e-9;
  std::size_t max_iterations = 100000;
  /// Degenerate pivots in a row before switching from Dantzig's rule to
  /// Bland's rule for the rest of the phase.
  std::size_t stall_limit = 50;
  /// Known lower bound on the optimum. Phase two stops once the objective
  /// comes within `tolerance` of it.
  double objective_lower_bound = -std::numeric_limits<double>::infinity();
};

/// Dense two-phase tableau simplex.
Solution solve(const LinearProgram& program, const Options& options = {});

}  // namespace feedback::lp
