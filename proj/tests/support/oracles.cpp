#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace oracle {

namespace {

double simpson(const std::function<double(double)>& f, double a, double b, double fa, double fm,
               double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
  const double fa = f(a);
  const double fb = f(b);
  const double m = 0.5 * (a + b);
  const double fm = f(m);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson(f, a, b, fa, fm, fb, whole, tol, 60);
}

double beta_cdf(double x, double a, double b) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  if (x > 0.5) return 1.0 - beta_cdf(1.0 - x, b, a);
  // With t = s^(1/a) the density t^(a-1) dt becomes ds / a, which removes the
  // singularity at 0 for a < 1; t <= 1/2 keeps (1 - t)^(b-1) bounded.
  const double log_norm = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b);
  auto integrand = [&](double s) {
    const double t = std::pow(s, 1.0 / a);
    return std::exp((b - 1.0) * std::log1p(-t));
  };
  return std::exp(log_norm) / a * integrate(integrand, 0.0, std::pow(x, a), 1e-13);
}

double chi2_survival(double x, int dof) {
  const double k = 0.5 * dof;
  const double log_norm = -k * std::log(2.0) - std::lgamma(k);
  auto density = [&](double t) {
    if (t <= 0.0) return 0.0;
    return std::exp(log_norm + (k - 1.0) * std::log(t) - 0.5 * t);
  };
  // Integrate the tail in unit-width pieces until it is negligible; the
  // substitution t = x + u / (1 - u) would put a singularity at u = 1.
  double total = 0.0;
  double lo = x;
  for (;;) {
    const double width = std::max(1.0, 0.25 * lo);
    const double piece = integrate(density, lo, lo + width, 1e-16);
    total += piece;
    lo += width;
    if (piece < 1e-18 && lo > x + 10.0 * dof) break;
  }
  return total;
}

double ks_statistic(std::vector<double> sample, const std::function<double(double)>& cdf) {
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = cdf(sample[i]);
    d = std::max(d, std::max(f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f));
  }
  return d;
}

double ks_pvalue(double d, std::size_t n) {
  const double sn = std::sqrt(static_cast<double>(n));
  const double lambda = (sn + 0.12 + 0.11 / sn) * d;
  double sum = 0.0;
  for (int j = 1; j <= 200; ++j) {
    const double term = std::exp(-2.0 * j * j * lambda * lambda);
    sum += (j % 2 == 1 ? 2.0 : -2.0) * term;
    if (term < 1e-16) break;
  }
  return std::clamp(sum, 0.0, 1.0);
}

double central_difference(const std::function<double(std::span<const double>)>& f,
                          std::vector<double> x, std::size_t i, double h) {
  const double base = x[i];
  x[i] = base + h;
  const double up = f(x);
  x[i] = base - h;
  const double down = f(x);
  return (up - down) / (2.0 * h);
}

std::vector<double> nearest_simplex_point_3d(std::span<const double> v, double step) {
  auto dist2 = [&](double a, double b) {
    const double c = 1.0 - a - b;
    return (a - v[0]) * (a - v[0]) + (b - v[1]) * (b - v[1]) + (c - v[2]) * (c - v[2]);
  };
  double best = std::numeric_limits<double>::infinity();
  double ba = 0.0;
  double bb = 0.0;
  const int n = static_cast<int>(std::lround(1.0 / step));
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; i + j <= n; ++j) {
      const double a = i * step;
      const double b = j * step;
      const double d = dist2(a, b);
      if (d < best) {
        best = d;
        ba = a;
        bb = b;
      }
    }
  }
  // Local refinement on successively finer grids around the best cell.
  for (double h = step / 10.0; h > 1e-9; h /= 10.0) {
    const double ca = ba;
    const double cb = bb;
    for (int i = -10; i <= 10; ++i) {
      for (int j = -10; j <= 10; ++j) {
        const double a = ca + i * h;
        const double b = cb + j * h;
        if (a < 0.0 || b < 0.0 || a + b > 1.0) continue;
        const double d = dist2(a, b);
        if (d < best) {
          best = d;
          ba = a;
          bb = b;
        }
      }
    }
  }
  return {ba, bb, 1.0 - ba - bb};
}

}  // namespace oracle
