#include "feedback/softmax.hpp"

#include <algorithm>
#include <cmath>

#include "feedback/error.hpp"

namespace feedback {

namespace {

void check_inputs(std::span<const double> scores, double lambda) {
  if (scores.empty()) throw StructuralError("softmax over an empty score vector");
  if (!std::isfinite(lambda) || lambda < 0.0) {
    throw StructuralError("softmax temperature must be finite and >= 0");
  }
  for (double s : scores) {
    if (!std::isfinite(s)) throw StructuralError("softmax score is not finite");
  }
}

}  // namespace

std::vector<double> softmax_prob(std::span<const double> scores, double lambda) {
  check_inputs(scores, lambda);
  const double top = *std::max_element(scores.begin(), scores.end());
  std::vector<double> p(scores.size());
  double total = 0.0;
  for (std::size_t c = 0; c < scores.size(); ++c) {
    p[c] = std::exp(lambda * (scores[c] - top));
    total += p[c];
  }
  for (double& v : p) v /= total;
  return p;
}

double log_softmax_at(std::span<const double> scores, double lambda, std::size_t chosen) {
  check_inputs(scores, lambda);
  if (chosen >= scores.size()) throw StructuralError("chosen topic out of range");
  const double top = *std::max_element(scores.begin(), scores.end());
  double total = 0.0;
  for (double s : scores) total += std::exp(lambda * (s - top));
  return lambda * (scores[chosen] - top) - std::log(total);
}

}  // namespace feedback
