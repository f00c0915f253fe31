#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include "bmc/core.hpp"

namespace bmc {

/// Counter-based pseudo-random generator: every draw is addressed by
/// (seed, stream, counter), so growing a sequence never reshuffles
/// earlier draws and distinct streams are independent.
class CounterRng {
 public:
  explicit CounterRng(uint64_t seed) : seed_(seed) {}

  /// Uniform in (0, 1), never exactly 0 or 1.
  double uniform(uint64_t stream, uint64_t counter) const;
  /// Standard normal via Box-Muller on counters (2i, 2i+1).
  double normal(uint64_t stream, uint64_t counter) const;
  /// Exponential with the given mean.
  double exponential(uint64_t stream, uint64_t counter, double mean) const;

 private:
  uint64_t seed_;
};

/// Inverse standard normal CDF (Acklam's rational approximation).
double inverse_normal_cdf(double p);

struct WorkloadSpec {
  enum class Kind { Uniform, IidLogNormalExp, FromFile };
  Kind kind = Kind::Uniform;
  int n = 0;
  uint64_t seed = 0;

  // Uniform(lbar, rbar)
  double lbar = 1, rbar = 1;

  // Lengths exp(Normal(mu, v)) with v the variance; reads exponential.
  double mu = 10, v = 1, read_mean = 1;

  // FromFile
  std::string path;

  /// Optional truncation quantile in (0, 1); 0 disables. Draws are
  /// clamped at that quantile of their distribution, giving the bounded
  /// inputs the average-case analyses assume.
  double truncate_quantile = 0;
};

/// Deterministic given the spec (including seed).
Instance generate(const WorkloadSpec& spec);

/// Arithmetic means of lengths and read rates; errors on empty input.
std::pair<double, double> empirical_means(const Instance& instance);

}  // namespace bmc
