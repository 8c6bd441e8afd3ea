#pragma once

#include <functional>
#include <string>

#include <Eigen/Dense>

namespace bcp {

/// Objective returning f(x) and writing the gradient. May return +inf to reject x.
using Objective = std::function<double(const Eigen::VectorXd& x, Eigen::VectorXd& grad)>;

struct BfgsOptions {
  double grad_tol = 1e-6;   // on max-abs gradient
  int max_iter = 500;
  double min_step = 1e-16;  // line-search floor
};

struct BfgsResult {
  Eigen::VectorXd x;
  double f = 0.0;
  Eigen::VectorXd grad;
  double grad_norm = 0.0;  // max-abs
  int iterations = 0;
  bool converged = false;
  std::string message;
};

/// Quasi-Newton minimization: BFGS inverse-Hessian updates with a backtracking
/// Armijo line search. Updates that would break positive definiteness are skipped.
BfgsResult minimize_bfgs(const Objective& objective, const Eigen::VectorXd& x0, const BfgsOptions& options = {});

}  // namespace bcp
