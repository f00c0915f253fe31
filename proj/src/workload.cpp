#include "bmc/workload.hpp"

#include <algorithm>
#include <cmath>

#include "bmc/io.hpp"

namespace bmc {

namespace {

uint64_t mix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

double CounterRng::uniform(uint64_t stream, uint64_t counter) const {
  uint64_t h = mix64(seed_);
  h = mix64(h ^ (stream + 0xD1B54A32D192ED03ULL));
  h = mix64(h ^ counter);
  double u = static_cast<double>(h >> 11) * 0x1.0p-53;
  if (u <= 0.0) u = 0x1.0p-54;
  return u;
}

double CounterRng::normal(uint64_t stream, uint64_t counter) const {
  double u1 = uniform(stream, 2 * counter);
  double u2 = uniform(stream, 2 * counter + 1);
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * 3.14159265358979323846 * u2);
}

double CounterRng::exponential(uint64_t stream, uint64_t counter,
                               double mean) const {
  return -mean * std::log(uniform(stream, counter));
}

double inverse_normal_cdf(double p) {
  if (p <= 0 || p >= 1) throw Error("inverse_normal_cdf: p must be in (0,1)");
  // Acklam's rational approximation, relative error below 1.15e-9.
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425, phigh = 1 - plow;
  double q, r;
  if (p < plow) {
    q = std::sqrt(-2 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q +
            c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
  }
  if (p > phigh) {
    q = std::sqrt(-2 * std::log(1 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q +
             c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
  }
  q = p - 0.5;
  r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) *
         q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
}

Instance generate(const WorkloadSpec& spec) {
  switch (spec.kind) {
    case WorkloadSpec::Kind::Uniform: {
      if (spec.lbar < 0 || spec.rbar < 0 || spec.n < 0) {
        throw Error("generate: uniform spec requires non-negative parameters");
      }
      return Instance::uniform(spec.lbar, spec.rbar, spec.n);
    }
    case WorkloadSpec::Kind::IidLogNormalExp: {
      if (spec.v < 0) throw Error("generate: variance must be non-negative");
      if (spec.read_mean <= 0) {
        throw Error("generate: read mean must be positive");
      }
      CounterRng rng(spec.seed);
      double sigma = std::sqrt(spec.v);
      double zmax = 0, xmax = 0;
      bool truncate = spec.truncate_quantile > 0;
      if (truncate) {
        if (spec.truncate_quantile >= 1) {
          throw Error("generate: truncation quantile must be in (0,1)");
        }
        zmax = inverse_normal_cdf(spec.truncate_quantile);
        xmax = -spec.read_mean * std::log(1 - spec.truncate_quantile);
      }
      std::vector<double> lens(spec.n), reads(spec.n);
      for (int i = 0; i < spec.n; ++i) {
        double z = rng.normal(0, i);
        if (truncate) z = std::min(z, zmax);
        lens[i] = std::exp(spec.mu + sigma * z);
        double x = rng.exponential(1, i, spec.read_mean);
        if (truncate) x = std::min(x, xmax);
        reads[i] = x;
      }
      return Instance(std::move(lens), std::move(reads));
    }
    case WorkloadSpec::Kind::FromFile: {
      Instance inst = read_instance_csv(spec.path);
      if (spec.n > 0 && spec.n < inst.size()) return inst.prefix(spec.n);
      return inst;
    }
  }
  throw Error("generate: unknown workload kind");
}

std::pair<double, double> empirical_means(const Instance& instance) {
  if (instance.size() == 0) {
    throw Error("empirical_means: empty instance");
  }
  return {instance.total_length() / instance.size(),
          instance.total_read() / instance.size()};
}

}  // namespace bmc
