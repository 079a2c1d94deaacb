#include "feedback/random.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace feedback {

namespace {

// log(k!) from a table for small k and the Stirling series above it.
double log_factorial(std::uint64_t k) {
  static const std::array<double, 16> table = [] {
    std::array<double, 16> t{};
    double acc = 0.0;
    t[0] = 0.0;
    for (std::size_t i = 1; i < t.size(); ++i) {
      acc += std::log(static_cast<double>(i));
      t[i] = acc;
    }
    return t;
  }();
  if (k < table.size()) return table[k];
  const double n = static_cast<double>(k) + 1.0;
  const double inv = 1.0 / n;
  const double inv2 = inv * inv;
  return (n - 0.5) * std::log(n) - n + 0.5 * std::log(2.0 * std::numbers::pi) +
         inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 / 1260.0));
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
  return mix_seed(mix_seed(master) ^ (index * 0xd1b54a32d192ed03ULL));
}

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::uniform_open() {
  return (static_cast<double>(engine_() >> 12) + 0.5) * 0x1.0p-52;
}

std::size_t Rng::below(std::size_t n) {
  const unsigned __int128 wide =
      static_cast<unsigned __int128>(engine_()) * static_cast<unsigned __int128>(n);
  return static_cast<std::size_t>(wide >> 64);
}

double Rng::normal() {
  if (has_spare_normal_) {
    has_spare_normal_ = false;
    return spare_normal_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_normal_ = v * f;
  has_spare_normal_ = true;
  return u * f;
}

double Rng::gamma(double shape) {
  if (shape < 1.0) return std::exp(log_gamma_variate(shape));
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform_open();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double Rng::log_gamma_variate(double shape) {
  if (shape >= 1.0) return std::log(gamma(shape));
  // G(a) = G(a + 1) * U^(1/a)
  return std::log(gamma(shape + 1.0)) + std::log(uniform_open()) / shape;
}

double Rng::beta(double a, double b) {
  const double la = log_gamma_variate(a);
  const double lb = log_gamma_variate(b);
  // a / (a + b) == 1 / (1 + exp(lb - la))
  const double diff = lb - la;
  if (diff > 0) {
    const double e = std::exp(-diff);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(diff));
}

std::uint64_t Rng::poisson(double rate) {
  if (rate <= 0.0) return 0;
  return rate < 10.0 ? poisson_inversion(rate) : poisson_ptrs(rate);
}

std::uint64_t Rng::poisson_inversion(double rate) {
  const double limit = std::exp(-rate);
  std::uint64_t k = 0;
  double prod = uniform();
  while (prod > limit) {
    ++k;
    prod *= uniform();
  }
  return k;
}

// Hormann (1993), "The transformed rejection method for generating Poisson
// random variables".
std::uint64_t Rng::poisson_ptrs(double rate) {
  const double slam = std::sqrt(rate);
  const double loglam = std::log(rate);
  const double b = 0.931 + 2.53 * slam;
  const double a = -0.059 + 0.02483 * b;
  const double invalpha = 1.1239 + 1.1328 / (b - 3.4);
  const double vr = 0.9277 - 3.6224 / (b - 2.0);
  for (;;) {
    const double u = uniform() - 0.5;
    const double v = uniform();
    const double us = 0.5 - std::fabs(u);
    const double kf = std::floor((2.0 * a / us + b) * u + rate + 0.43);
    if (us >= 0.07 && v <= vr) return static_cast<std::uint64_t>(kf);
    if (kf < 0.0 || (us < 0.013 && v > us)) continue;
    const auto k = static_cast<std::uint64_t>(kf);
    if (std::log(v) + std::log(invalpha) - std::log(a / (us * us) + b) <=
        -rate + kf * loglam - log_factorial(k)) {
      return k;
    }
  }
}

std::vector<double> Rng::dirichlet(std::size_t dim, double concentration) {
  std::vector<double> w(dim);
  // Log-space normalization so that tiny concentrations do not underflow.
  double top = -INFINITY;
  for (auto& v : w) {
    v = log_gamma_variate(concentration);
    top = std::max(top, v);
  }
  double total = 0.0;
  for (auto& v : w) {
    v = std::exp(v - top);
    total += v;
  }
  for (auto& v : w) v /= total;
  return w;
}

}  // namespace feedback
