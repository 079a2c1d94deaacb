#include <gtest/gtest.h>

#include <cmath>

#include "feedback/error.hpp"
#include "feedback/special.hpp"
#include "oracles.hpp"

using feedback::chi2_survival;

TEST(Special, SurvivalAtOriginIsOne) {
  for (int dof : {1, 2, 3, 10, 50}) EXPECT_EQ(chi2_survival(0.0, dof), 1.0);
}

TEST(Special, TwoDegreesClosedForm) {
  EXPECT_NEAR(chi2_survival(2.0, 2), std::exp(-1.0), 1e-12);
  for (double x : {0.1, 0.5, 3.0, 10.0, 40.0, 100.0}) {
    EXPECT_NEAR(chi2_survival(x, 2), std::exp(-x / 2.0), 1e-12 * std::max(1.0, std::exp(-x / 2)))
        << x;
    EXPECT_NEAR(chi2_survival(x, 2) / std::exp(-x / 2.0), 1.0, 1e-12) << x;
  }
}

TEST(Special, OneDegreeMatchesQuadrature) {
  for (double x : {1.0, 4.0, 9.0, 16.0, 25.0}) {
    EXPECT_NEAR(chi2_survival(x, 1), oracle::chi2_survival(x, 1), 1e-8) << x;
  }
}

TEST(Special, SeveralDegreesMatchQuadrature) {
  for (int dof : {3, 4, 7, 10}) {
    for (double x : {0.5, 2.0, 6.0, 15.0, 30.0}) {
      EXPECT_NEAR(chi2_survival(x, dof), oracle::chi2_survival(x, dof), 1e-8)
          << "dof " << dof << " x " << x;
    }
  }
}

TEST(Special, StrictlyDecreasing) {
  for (int dof : {1, 2, 5, 20}) {
    double prev = chi2_survival(0.0, dof);
    for (double x = 0.25; x < 80.0; x += 0.25) {
      const double s = chi2_survival(x, dof);
      ASSERT_LT(s, prev) << "dof " << dof << " x " << x;
      prev = s;
    }
  }
}

TEST(Special, LowerAndUpperComplement) {
  for (double a : {0.5, 1.0, 3.5, 12.0}) {
    for (double x : {0.1, 1.0, 4.0, 20.0}) {
      EXPECT_NEAR(feedback::regularized_gamma_p(a, x) + feedback::regularized_gamma_q(a, x), 1.0,
                  1e-13);
    }
  }
}

TEST(Special, SmallTailKeepsRelativePrecision) {
  // Q(1, x) = exp(-x).
  EXPECT_NEAR(feedback::regularized_gamma_q(1.0, 200.0) / std::exp(-200.0), 1.0, 1e-12);
}

TEST(Special, RejectsInvalidArguments) {
  EXPECT_THROW(chi2_survival(1.0, 0), feedback::StructuralError);
  EXPECT_THROW(chi2_survival(-1.0, 2), feedback::StructuralError);
}
