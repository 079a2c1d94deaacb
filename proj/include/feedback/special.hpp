#pragma once

namespace feedback {

/// Regularized lower incomplete gamma P(a, x).
double regularized_gamma_p(double a, double x);

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x), evaluated
/// directly (series below a + 1, Lentz continued fraction above) so that
/// small tails keep full relative precision.
double regularized_gamma_q(double a, double x);

/// Upper-tail probability of the chi-squared distribution with `dof` degrees
/// of freedom. Throws StructuralError for dof < 1 or x < 0.
double chi2_survival(double x, int dof);

}  // namespace feedback
