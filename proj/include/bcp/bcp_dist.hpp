#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "bcp/poisson.hpp"
#include "bcp/rng.hpp"

namespace bcp {

/// Bivariate conditional Poisson law BCP(lambda1, lambda2, phi):
/// Z1 ~ Poisson(lambda1), Z2 | Z1 = z ~ Poisson(mu2 * exp(phi * z)),
/// mu2 = lambda2 * exp(-lambda1 * (e^phi - 1)). lambda2 is the marginal mean of Z2.
struct BcpParams {
  double lambda1 = 1.0;
  double lambda2 = 1.0;
  double phi = 0.0;

  /// Throws DomainError unless both means are finite and positive and phi is finite.
  void validate() const;
};

/// A value that may have saturated (overflow to inf, or underflow of a ratio to 0).
struct Flagged {
  double value = 0.0;
  bool saturated = false;
};

using CountPair = std::pair<std::int64_t, std::int64_t>;

double mu2(const BcpParams& p);

/// log P(Z1 = x, Z2 = y). Returns -inf when the conditional-mean exponent overflows.
double log_pmf(std::int64_t x, std::int64_t y, const BcpParams& p);


/// Draw (Z1, Z2). Throws NumericalError if the conditional mean of Z2 overflows.
CountPair sample(const BcpParams& p, Rng& rng);

double covariance(const BcpParams& p);
double variance_z2(const BcpParams& p);
Flagged variance_z2_flagged(const BcpParams& p);
double correlation(const BcpParams& p);
Flagged correlation_flagged(const BcpParams& p);

struct CorrelationExtremum {
  double phi = 0.0;
  double corr = 0.0;
  bool maximum = false;  // sign of corr decides: positive side is a maximum
};

struct CorrelationExtrema {
  std::vector<CorrelationExtremum> points;
  std::vector<std::string> notes;  // why candidate roots were dropped
};

/// Stationary points of corr(phi) for fixed means, via Lambert W.
CorrelationExtrema correlation_extrema(double lambda1, double lambda2);

/// Poisson mode; an integer mean has two modes and the smaller one is returned.
std::int64_t poisson_mode(double mean);

/// Upper end of the y1 window scanned by joint_mode.
std::int64_t joint_mode_window(double lambda1);

/// argmax of the joint pmf, ties broken to the lexicographically smallest pair.
CountPair joint_mode(const BcpParams& p);

/// pmf values over [0, max_y1] x [0, max_y2], row-major in y1.
std::vector<double> pmf_grid(const BcpParams& p, std::int64_t max_y1, std::int64_t max_y2);

}  // namespace bcp
