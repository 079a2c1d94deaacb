#pragma once

#include <cstddef>
#include <cstdint>

#include "feedback/grid.hpp"
#include "feedback/model.hpp"
#include "feedback/random.hpp"

namespace feedback {

/// Beta(alpha, beta) prior shared by every q_cv.
struct BetaPrior {
  double alpha = 3.0;
  double beta = 3.0;

  /// Throws StructuralError unless alpha > 0 and beta > 0.
  void validate() const;

  bool operator==(const BetaPrior&) const = default;
};

using CountMatrix = Grid<std::int64_t>;

/// Like/dislike counts per (topic, follower) plus the prior they update.
class BetaPosteriorTable {
 public:
  BetaPosteriorTable(BetaPrior prior, std::size_t topics, std::size_t followers);

  const BetaPrior& prior() const noexcept { return prior_; }
  std::size_t topics() const noexcept { return likes_.rows(); }
  std::size_t followers() const noexcept { return likes_.cols(); }
  const CountMatrix& likes() const noexcept { return likes_; }
  const CountMatrix& dislikes() const noexcept { return dislikes_; }

  /// In-place update; label 1 is a like, 0 a dislike.
  void record(TopicId c, std::size_t v, int label);
  /// Posterior parameters Beta(alpha + n_cv, beta + nbar_cv).
  BetaPrior posterior(TopicId c, std::size_t v) const;

  bool operator==(const BetaPosteriorTable&) const = default;

 private:
  void check(TopicId c, std::size_t v) const;

  BetaPrior prior_;
  CountMatrix likes_;
  CountMatrix dislikes_;
};

/// Value-semantic update: returns a copy with one more label for (c, v).
BetaPosteriorTable record_feedback(BetaPosteriorTable table, TopicId c, std::size_t v,
                                   int label);

/// Posterior mode (alpha + n - 1) / (alpha + beta + n + nbar - 2), clamped to
/// [0, 1]. Throws DegeneratePriorError when the denominator is not positive.
double map_estimate(const BetaPosteriorTable& table, TopicId c, std::size_t v);

/// Same formula on raw parameters.
double map_estimate(const BetaPrior& prior, std::int64_t likes, std::int64_t dislikes);

/// One draw from the posterior of q_cv.
double sample_estimate(const BetaPosteriorTable& table, TopicId c, std::size_t v, Rng& rng);

/// Every map_estimate as a topic x follower matrix.
Matrix map_estimates(const BetaPosteriorTable& table);

/// One posterior draw for every (c, v).
Matrix sample_estimates(const BetaPosteriorTable& table, Rng& rng);

}  // namespace feedback
