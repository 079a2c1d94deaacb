#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numeric>

#include "feedback/error.hpp"
#include "feedback/model.hpp"
#include "feedback/random.hpp"
#include "feedback/softmax.hpp"

using namespace feedback;

TEST(Softmax, ZeroTemperatureIsUniform) {
  const std::vector<double> s{0.3, 0.9, 0.1, 0.4};
  for (double p : softmax_prob(s, 0.0)) EXPECT_DOUBLE_EQ(p, 0.25);
}

TEST(Softmax, HandExample) {
  const std::vector<double> s{1.0, 0.0};
  const auto p = softmax_prob(s, std::log(3.0));
  EXPECT_NEAR(p[0], 0.75, 1e-15);
  EXPECT_NEAR(p[1], 0.25, 1e-15);
  EXPECT_NEAR(log_softmax_at(s, std::log(3.0), 0), std::log(0.75), 1e-15);
}

TEST(Softmax, ShiftInvariance) {
  const std::vector<double> s{0.2, 0.7, 0.5};
  std::vector<double> shifted = s;
  for (double& v : shifted) v += 123.25;
  const auto p = softmax_prob(s, 7.0);
  const auto q = softmax_prob(shifted, 7.0);
  for (std::size_t i = 0; i < s.size(); ++i) EXPECT_NEAR(p[i], q[i], 1e-14);
}

TEST(Softmax, NormalizedAndArgmaxPreserving) {
  Rng rng(41);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> s(1 + rng.below(20));
    for (double& v : s) v = rng.uniform(-5.0, 5.0);
    const double lambda = rng.uniform(0.01, 200.0);
    const auto p = softmax_prob(s, lambda);
    const double total = std::accumulate(p.begin(), p.end(), 0.0);
    ASSERT_NEAR(total, 1.0, 1e-12);
    ASSERT_EQ(argmax_lowest(p), argmax_lowest(s));
    const std::size_t c = rng.below(s.size());
    if (p[c] < 1e-290) continue;
    ASSERT_NEAR(log_softmax_at(s, lambda, c), std::log(p[c]), 1e-9 * std::fabs(std::log(p[c])) + 1e-12);
  }
}

TEST(Softmax, LargeTemperatureStaysFinite) {
  const std::vector<double> s{0.0, 1.0};
  const auto p = softmax_prob(s, 1e6);
  EXPECT_EQ(p[1], 1.0);
  EXPECT_EQ(p[0], 0.0);
  EXPECT_NEAR(log_softmax_at(s, 1e6, 0), -1e6, 1e-6);
}

TEST(Softmax, Errors) {
  const std::vector<double> s{0.0, 1.0};
  EXPECT_THROW(softmax_prob(s, -1.0), StructuralError);
  EXPECT_THROW(softmax_prob(s, std::numeric_limits<double>::infinity()), StructuralError);
  const std::vector<double> bad{0.0, std::numeric_limits<double>::quiet_NaN()};
  EXPECT_THROW(softmax_prob(bad, 1.0), StructuralError);
}
