#include "bcp/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bcp {

namespace {

double max_abs(const Eigen::VectorXd& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

}  // namespace

BfgsResult minimize_bfgs(const Objective& objective, const Eigen::VectorXd& x0, const BfgsOptions& options) {
  const Eigen::Index k = x0.size();
  BfgsResult res;
  res.x = x0;
  res.grad = Eigen::VectorXd::Zero(k);
  res.f = objective(res.x, res.grad);
  if (!std::isfinite(res.f)) {
    res.message = "objective not finite at starting point";
    return res;
  }
  res.grad_norm = max_abs(res.grad);

  Eigen::MatrixXd h = Eigen::MatrixXd::Identity(k, k);
  bool scaled = false;
  int resets = 0;
  Eigen::VectorXd x_new(k);
  Eigen::VectorXd g_new(k);

  for (res.iterations = 0; res.iterations < options.max_iter; ++res.iterations) {
    if (res.grad_norm <= options.grad_tol) {
      res.converged = true;
      res.message = "gradient tolerance reached";
      return res;
    }
    Eigen::VectorXd dir = -h * res.grad;
    double slope = res.grad.dot(dir);
    if (!(slope < 0.0)) {
      h.setIdentity();
      scaled = false;
      dir = -res.grad;
      slope = -res.grad.squaredNorm();
    }
    // first step of an unscaled metric is capped to a unit move in the largest coordinate
    double step = scaled ? 1.0 : std::min(1.0, 1.0 / std::max(max_abs(dir), 1e-12));

    bool accepted = false;
    double f_new = std::numeric_limits<double>::infinity();
    while (step >= options.min_step) {
      x_new = res.x + step * dir;
      f_new = objective(x_new, g_new);
      if (std::isfinite(f_new) && f_new <= res.f + 1e-4 * step * slope) {
        accepted = true;
        break;
      }
      // quadratic interpolation when the trial value is usable, else halve
      double next = 0.5 * step;
      if (std::isfinite(f_new)) {
        const double denom = 2.0 * (f_new - res.f - slope * step);
        if (denom > 0.0) next = std::clamp(-slope * step * step / denom, 0.1 * step, 0.5 * step);
      }
      step = next;
    }

    if (!accepted) {
      if (resets++ < 2 && scaled) {
        h.setIdentity();
        scaled = false;
        continue;
      }
      res.message = "line search failed";
      return res;
    }

    const Eigen::VectorXd s = x_new - res.x;
    const Eigen::VectorXd y = g_new - res.grad;
    const double sy = s.dot(y);
    if (sy > 1e-12 * s.norm() * y.norm()) {
      if (!scaled) {
        h = Eigen::MatrixXd::Identity(k, k) * (sy / y.squaredNorm());
        scaled = true;
      }
      const double rho = 1.0 / sy;
      const Eigen::VectorXd hy = h * y;
      const double yhy = y.dot(hy);
      h += ((sy + yhy) * rho * rho) * (s * s.transpose()) - rho * (hy * s.transpose() + s * hy.transpose());
    }
    res.x = x_new;
    res.f = f_new;
    res.grad = g_new;
    res.grad_norm = max_abs(res.grad);
  }
  res.converged = res.grad_norm <= options.grad_tol;
  res.message = res.converged ? "gradient tolerance reached" : "iteration limit reached";
  return res;
}

}  // namespace bcp
