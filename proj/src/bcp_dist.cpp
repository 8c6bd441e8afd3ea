#include "bcp/bcp_dist.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <limits>
#include <sstream>

#include "bcp/error.hpp"
#include "bcp/lambert_w.hpp"

namespace bcp {

namespace {

constexpr double kMaxExp = 709.0;

// log of lambda2 * exp(-lambda1 (e^phi - 1) + phi x)
double log_conditional_mean(const BcpParams& p, double x) {
  return std::log(p.lambda2) - p.lambda1 * std::expm1(p.phi) + p.phi * x;
}

}  // namespace

void BcpParams::validate() const {
  if (!(lambda1 > 0.0) || !std::isfinite(lambda1) || !(lambda2 > 0.0) || !std::isfinite(lambda2) ||
      !std::isfinite(phi)) {
    std::ostringstream msg;
    msg << "invalid BCP parameters: lambda1=" << lambda1 << " lambda2=" << lambda2 << " phi=" << phi;
    throw DomainError(msg.str());
  }
}

double mu2(const BcpParams& p) {
  const double exponent = -p.lambda1 * std::expm1(p.phi);
  const double log_mu = std::log(p.lambda2) + exponent;
  const double value = std::exp(log_mu);
  if (!std::isfinite(value) || value <= 0.0) {
    std::ostringstream msg;
    msg << "mu2 not finite: exponent -lambda1*(e^phi-1) = " << exponent;
    throw DomainError(msg.str());
  }
  return value;
}

double log_pmf(std::int64_t x, std::int64_t y, const BcpParams& p) {
  const double log_cm = log_conditional_mean(p, static_cast<double>(x));
  if (log_cm > kMaxExp) {
    return -std::numeric_limits<double>::infinity();
  }
  // P(x, y) = Pois(x; lambda1) Pois(y; mu2 e^{phi x})
  return poisson_log_pmf(x, p.lambda1) + poisson_log_pmf(y, std::exp(log_cm));
}

CountPair sample(const BcpParams& p, Rng& rng) {
  const std::int64_t z1 = sample_poisson(p.lambda1, rng);
  const double log_cm = log_conditional_mean(p, static_cast<double>(z1));
  const double cm = std::exp(log_cm);
  if (!std::isfinite(cm) || cm > 4.0e15) {
    std::ostringstream msg;
    msg << "conditional mean of Z2 overflows at z1 = " << z1 << " (log mean " << log_cm << ")";
    throw NumericalError(msg.str());
  }
  return {z1, sample_poisson(cm, rng)};
}

double covariance(const BcpParams& p) { return p.lambda1 * p.lambda2 * std::expm1(p.phi); }

Flagged variance_z2_flagged(const BcpParams& p) {
  const double e = std::expm1(p.phi);
  const double inner = p.lambda1 * e * e;
  const double v = p.lambda2 + p.lambda2 * p.lambda2 * std::expm1(inner);
  if (!std::isfinite(v)) return {std::numeric_limits<double>::infinity(), true};
  return {v, false};
}

double variance_z2(const BcpParams& p) { return variance_z2_flagged(p).value; }

Flagged correlation_flagged(const BcpParams& p) {
  const double e = std::expm1(p.phi);
  const double inner = p.lambda1 * e * e;
  if (inner > kMaxExp) return {0.0, true};
  const double denom = 1.0 + p.lambda2 * std::expm1(inner);
  return {e * std::sqrt(p.lambda1 * p.lambda2 / denom), false};
}

double correlation(const BcpParams& p) { return correlation_flagged(p).value; }

CorrelationExtrema correlation_extrema(double lambda1, double lambda2) {
  BcpParams{lambda1, lambda2, 0.0}.validate();
  CorrelationExtrema out;
  // stationarity in s = lambda1 (e^phi - 1)^2 reduces to z e^z = (1/lambda2 - 1)/e, z = s - 1
  const double arg = (1.0 / lambda2 - 1.0) / std::numbers::e;

  std::vector<std::pair<WBranch, double>> roots{{WBranch::principal, lambert_w(WBranch::principal, arg)}};
  if (lambda2 > 1.0) roots.emplace_back(WBranch::lower, lambert_w(WBranch::lower, arg));

  for (const auto& [branch, z] : roots) {
    const char* tag = branch == WBranch::principal ? "W0" : "W-1";
    const double s = z + 1.0;
    if (!(s > 0.0)) {
      std::ostringstream msg;
      msg << tag << " root z=" << z << " gives lambda1*(e^phi-1)^2 = " << s << " <= 0: no real phi";
      out.notes.push_back(msg.str());
      continue;
    }
    const double r = std::sqrt(s / lambda1);
    for (double sign : {1.0, -1.0}) {
      const double base = 1.0 + sign * r;
      if (!(base > 0.0)) {
        std::ostringstream msg;
        msg << tag << " root z=" << z << ": 1 - sqrt((z+1)/lambda1) = " << base
            << " <= 0, negative-side extremum not attained";
        out.notes.push_back(msg.str());
        continue;
      }
      const double phi = std::log(base);
      const double c = correlation({lambda1, lambda2, phi});
      out.points.push_back({phi, c, c > 0.0});
    }
  }
  return out;
}

std::int64_t poisson_mode(double mean) {
  const double fl = std::floor(mean);
  if (fl == mean && mean >= 1.0) return static_cast<std::int64_t>(mean) - 1;
  return static_cast<std::int64_t>(fl);
}

std::int64_t joint_mode_window(double lambda1) {
  return static_cast<std::int64_t>(std::ceil(lambda1 + 12.0 * std::sqrt(lambda1) + 20.0));
}

CountPair joint_mode(const BcpParams& p) {
  p.validate();
  const std::int64_t upper = joint_mode_window(p.lambda1);
  if (upper > (std::int64_t{1} << 40)) {
    throw NumericalError("joint_mode: search window exhausts numeric range");
  }
  const double log_mu2 = std::log(p.lambda2) - p.lambda1 * std::expm1(p.phi);
  CountPair best{0, 0};
  double best_value = -std::numeric_limits<double>::infinity();
  for (std::int64_t y1 = 0; y1 <= upper; ++y1) {
    const double log_cm = log_mu2 + p.phi * static_cast<double>(y1);
    if (log_cm > 18.0 * std::log(10.0)) {
      continue;  // conditional mean beyond 1e18: pmf mass along this row is negligible
    }
    const std::int64_t y2 = poisson_mode(std::exp(log_cm));
    const double value = log_pmf(y1, y2, p);
    // absolute tolerance absorbs lgamma rounding at exact Poisson ties
    if (!std::isfinite(best_value) ? value > best_value
                                   : value > best_value + 1e-12 * std::max(1.0, std::fabs(best_value))) {
      best_value = value;
      best = {y1, y2};
    }
  }
  if (!std::isfinite(best_value)) {
    throw NumericalError("joint_mode: no finite pmf value in search window");
  }
  return best;
}

std::vector<double> pmf_grid(const BcpParams& p, std::int64_t max_y1, std::int64_t max_y2) {
  p.validate();
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>((max_y1 + 1) * (max_y2 + 1)));
  for (std::int64_t x = 0; x <= max_y1; ++x) {
    for (std::int64_t y = 0; y <= max_y2; ++y) out.push_back(std::exp(log_pmf(x, y, p)));
  }
  return out;
}

}  // namespace bcp
