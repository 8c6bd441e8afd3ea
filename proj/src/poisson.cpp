#include "bcp/poisson.hpp"

#include <cmath>
#include <numbers>

namespace bcp {

namespace {

// Stirling-series remainder: lgamma(n + 1) - (n + 0.5) log n + n - log(sqrt(2 pi)).
double stirling_error(double n) {
  if (n <= 15.0) return std::lgamma(n + 1.0) - (n + 0.5) * std::log(n) + n - 0.5 * std::log(2.0 * std::numbers::pi);
  constexpr double s0 = 1.0 / 12, s1 = 1.0 / 360, s2 = 1.0 / 1260, s3 = 1.0 / 1680, s4 = 1.0 / 1188;
  const double nn = n * n;
  return (s0 - (s1 - (s2 - (s3 - s4 / nn) / nn) / nn) / nn) / n;
}

// Deviance term k log(k / m) + m - k, summed as a series when k is close to m.
double poisson_deviance(double k, double m) {
  if (std::fabs(k - m) < 0.1 * (k + m)) {
    double v = (k - m) / (k + m);
    double s = (k - m) * v;
    double ej = 2.0 * k * v;
    v *= v;
    for (int j = 1; j < 1000; ++j) {
      ej *= v;
      const double next = s + ej / (2 * j + 1);
      if (next == s) return s;
      s = next;
    }
    return s;
  }
  return k * std::log(k / m) + m - k;
}

}  // namespace

double poisson_log_pmf(std::int64_t k, double mean) {
  if (k == 0) return -mean;
  const double kd = static_cast<double>(k);
  // saddle-point form keeps full precision for counts far beyond 2^53 / lgamma's reach
  return -stirling_error(kd) - poisson_deviance(kd, mean) - 0.5 * std::log(2.0 * std::numbers::pi * kd);
}

}  // namespace bcp
