#pragma once

#include <span>
#include <vector>

namespace feedback {

/// exp(lambda * s_c) / sum_c' exp(lambda * s_c'), evaluated with a max shift.
/// Throws StructuralError on non-finite scores or a negative / non-finite
/// lambda.
std::vector<double> softmax_prob(std::span<const double> scores, double lambda);

/// log of the softmax probability of `chosen`, computed as a stable
/// log-sum-exp.
double log_softmax_at(std::span<const double> scores, double lambda, std::size_t chosen);

}  // namespace feedback
