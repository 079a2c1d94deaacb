#include "feedback/inference.hpp"

#include <algorithm>
#include <cmath>

namespace feedback {

void BetaPrior::validate() const {
  if (!(alpha > 0.0) || !(beta > 0.0) || !std::isfinite(alpha) || !std::isfinite(beta)) {
    throw StructuralError("Beta prior parameters must be positive and finite");
  }
}

BetaPosteriorTable::BetaPosteriorTable(BetaPrior prior, std::size_t topics,
                                       std::size_t followers)
    : prior_(prior), likes_(topics, followers, 0), dislikes_(topics, followers, 0) {
  prior_.validate();
}

void BetaPosteriorTable::check(TopicId c, std::size_t v) const {
  if (c.index >= topics() || v >= followers()) {
    throw StructuralError("posterior table index out of range");
  }
}

void BetaPosteriorTable::record(TopicId c, std::size_t v, int label) {
  check(c, v);
  if (label == 1) {
    ++likes_(c.index, v);
  } else if (label == 0) {
    ++dislikes_(c.index, v);
  } else {
    throw StructuralError("feedback label must be 0 or 1");
  }
}

BetaPrior BetaPosteriorTable::posterior(TopicId c, std::size_t v) const {
  check(c, v);
  return {prior_.alpha + static_cast<double>(likes_(c.index, v)),
          prior_.beta + static_cast<double>(dislikes_(c.index, v))};
}

BetaPosteriorTable record_feedback(BetaPosteriorTable table, TopicId c, std::size_t v,
                                   int label) {
  table.record(c, v, label);
  return table;
}

double map_estimate(const BetaPrior& prior, std::int64_t likes, std::int64_t dislikes) {
  const double n = static_cast<double>(likes);
  const double nbar = static_cast<double>(dislikes);
  const double denom = prior.alpha + prior.beta + n + nbar - 2.0;
  if (!(denom > 0.0)) {
    throw DegeneratePriorError(
        "MAP estimate undefined: alpha + beta + n + nbar must exceed 2");
  }
  return std::clamp((prior.alpha + n - 1.0) / denom, 0.0, 1.0);
}

double map_estimate(const BetaPosteriorTable& table, TopicId c, std::size_t v) {
  if (c.index >= table.topics() || v >= table.followers()) {
    throw StructuralError("posterior table index out of range");
  }
  return map_estimate(table.prior(), table.likes()(c.index, v),
                      table.dislikes()(c.index, v));
}

double sample_estimate(const BetaPosteriorTable& table, TopicId c, std::size_t v,
                       Rng& rng) {
  const BetaPrior post = table.posterior(c, v);
  return rng.beta(post.alpha, post.beta);
}

Matrix map_estimates(const BetaPosteriorTable& table) {
  Matrix out(table.topics(), table.followers());
  for (std::size_t c = 0; c < table.topics(); ++c) {
    for (std::size_t v = 0; v < table.followers(); ++v) {
      out(c, v) = map_estimate(table.prior(), table.likes()(c, v), table.dislikes()(c, v));
    }
  }
  return out;
}

Matrix sample_estimates(const BetaPosteriorTable& table, Rng& rng) {
  Matrix out(table.topics(), table.followers());
  const BetaPrior& prior = table.prior();
  for (std::size_t c = 0; c < table.topics(); ++c) {
    for (std::size_t v = 0; v < table.followers(); ++v) {
      out(c, v) = rng.beta(prior.alpha + static_cast<double>(table.likes()(c, v)),
                           prior.beta + static_cast<double>(table.dislikes()(c, v)));
    }
  }
  return out;
}

}  // namespace feedback
