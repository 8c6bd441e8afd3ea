#include "bcp/lambert_w.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "bcp/error.hpp"

namespace bcp {

namespace {

constexpr double kInvE = 0.36787944117144232160;  // 1/e

double initial_guess(WBranch branch, double x) {
  // distance to the branch point, scaled so the series in p converges
  const double p2 = 2.0 * (std::numbers::e * x + 1.0);
  const double p = std::sqrt(std::max(p2, 0.0));
  if (branch == WBranch::principal) {
    if (x < -0.25) return -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p;
    if (x < 3.0) return std::log1p(x) * (1.0 - std::log1p(std::log1p(x)) / (2.0 + std::log1p(x)));
    const double l1 = std::log(x);
    const double l2 = std::log(l1);
    return l1 - l2 + l2 / l1;
  }
  if (x < -0.25) return -1.0 - p - p * p / 3.0 - 11.0 / 72.0 * p * p * p;
  const double l1 = std::log(-x);
  const double l2 = std::log(-l1);
  return l1 - l2 + l2 / l1;
}

}  // namespace

double lambert_w(WBranch branch, double x) {
  if (std::isnan(x)) {
    throw DomainError("lambert_w: NaN argument");
  }
  // rounding of -1/e itself should not be rejected
  const double tol = 4.0 * std::numeric_limits<double>::epsilon();
  if (x < -kInvE - tol || (branch == WBranch::lower && x >= 0.0)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "lambert_w: x = " << x << " outside domain of branch " << static_cast<int>(branch);
    throw DomainError(msg.str());
  }
  if (x <= -kInvE + tol) return -1.0;
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return x;

  double w = initial_guess(branch, x);
  for (int iter = 0; iter < 64; ++iter) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    const double wp1 = w + 1.0;
    if (wp1 == 0.0) break;
    const double denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
    const double step = f / denom;
    w -= step;
    if (std::fabs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::fabs(w))) {
      break;
    }
  }
  return w;
}

}  // namespace bcp
