#include "feedback/special.hpp"

#include <math.h>

#include <cmath>
#include <limits>

#include "feedback/error.hpp"

namespace feedback {

namespace {

constexpr double kEps = 1e-16;
constexpr int kMaxTerms = 10000;

// std::lgamma writes the global signgam on glibc; the reentrant variant keeps
// concurrent callers race-free.
double log_gamma_fn(double a) {
#if defined(__GLIBC__)
  int sign = 0;
  return ::lgamma_r(a, &sign);
#else
  return std::lgamma(a);
#endif
}

// Prefactor x^a e^-x / Gamma(a), in log space.
double log_prefactor(double a, double x) { return a * std::log(x) - x - log_gamma_fn(a); }

double series_p(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  double denom = a;
  for (int n = 0; n < kMaxTerms; ++n) {
    denom += 1.0;
    term *= x / denom;
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * kEps) break;
  }
  return sum * std::exp(log_prefactor(a, x));
}

double continued_fraction_q(double a, double x) {
  constexpr double tiny = std::numeric_limits<double>::min() / kEps;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxTerms; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kEps) break;
  }
  return std::exp(log_prefactor(a, x)) * h;
}

void check_args(double a, double x) {
  if (!(a > 0.0) || !(x >= 0.0) || std::isnan(x)) {
    throw StructuralError("incomplete gamma needs a > 0 and x >= 0");
  }
}

}  // namespace

double regularized_gamma_p(double a, double x) {
  check_args(a, x);
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  return x < a + 1.0 ? series_p(a, x) : 1.0 - continued_fraction_q(a, x);
}

double regularized_gamma_q(double a, double x) {
  check_args(a, x);
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  return x < a + 1.0 ? 1.0 - series_p(a, x) : continued_fraction_q(a, x);
}

double chi2_survival(double x, int dof) {
  if (dof < 1) throw StructuralError("chi-squared degrees of freedom must be >= 1");
  if (!(x >= 0.0)) throw StructuralError("chi-squared statistic must be >= 0");
  return regularized_gamma_q(0.5 * dof, 0.5 * x);
}

}  // namespace feedback
