#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace feedback {

/// SplitMix64 finalizer. Used to derive independent stream seeds from a
/// master seed and a run index.
std::uint64_t mix_seed(std::uint64_t x) noexcept;

/// Seed for run `index` under `master`.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept;

/// Random stream with the samplers the simulator needs.
///
/// The variate generators are implemented here rather than taken from
/// <random> so that output is identical across standard libraries; only the
/// 64-bit Mersenne Twister engine (whose output sequence is fixed by the
/// standard) is borrowed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(mix_seed(seed)) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on (0, 1), never returns 0.
  double uniform_open();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  bool bernoulli(double p) { return uniform() < p; }
  std::size_t below(std::size_t n);

  double normal();
  /// Gamma(shape, 1), Marsaglia-Tsang squeeze with the shape < 1 boost.
  double gamma(double shape);
  /// log of a Gamma(shape, 1) draw; stays finite for tiny shapes.
  double log_gamma_variate(double shape);
  /// Beta(a, b) as a ratio of Gamma draws, computed in log space.
  double beta(double a, double b);
  /// Exact Poisson(rate): inversion below 10, PTRS transformed rejection above.
  std::uint64_t poisson(double rate);
  /// Symmetric Dirichlet(concentration) over `dim` coordinates.
  std::vector<double> dirichlet(std::size_t dim, double concentration);

 private:
  std::uint64_t poisson_inversion(double rate);
  std::uint64_t poisson_ptrs(double rate);

  std::mt19937_64 engine_;
  bool has_spare_normal_ = false;
  double spare_normal_ = 0.0;
};

}  // namespace feedback
