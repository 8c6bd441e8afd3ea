#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "bcp/estimation.hpp"
#include "bcp/inference.hpp"

namespace bcp {

/// One simulation design: true parameters, sample size, replica count, fitting choices.
struct Scenario {
  std::string name = "custom";
  ModelParams truth;
  std::size_t n = 500;
  std::size_t replicas = 200;
  std::size_t burn_in = kDefaultBurnIn;
  FitConfig fit;
  std::uint64_t seed = 1;
};

/// Named designs: "a" and "b" (non-diagonal B, phi = +-0.1), "scenario1"
/// (diagonal, omega = (1, 1), phi = 0), "se" (diagonal, phi = 0.7).
std::optional<Scenario> preset_scenario(const std::string& name);
std::vector<std::string> preset_names();

struct ParamSummary {
  std::string name;
  double truth = 0.0;
  double mean = 0.0;
  double sd = 0.0;   // 0 with fewer than two replicas
  double mse = 0.0;
  std::size_t count = 0;
};

/// Mean, SD (n-1 denominator), and MSE against truth per column of estimates.
std::vector<ParamSummary> summarize(const std::vector<std::string>& names, const Eigen::VectorXd& truth,
                                    const std::vector<Eigen::VectorXd>& estimates);

struct ReplicaFailure {
  std::size_t index = 0;
  std::string message;
};

struct EstimationStudy {
  std::vector<std::string> names;
  std::vector<std::size_t> replica_index;
  std::vector<Eigen::VectorXd> estimates;
  std::vector<double> loglik;
  std::vector<ReplicaFailure> failures;
  std::vector<ParamSummary> summary;
};

/// Replicas of simulate -> fit. threads <= 1 runs the serial reference path.
EstimationStudy run_estimation_study(const Scenario& sc, int threads);

struct SeReplica {
  std::size_t index = 0;
  Eigen::VectorXd estimate;
  std::optional<Eigen::VectorXd> se_outer;
  std::optional<Eigen::VectorXd> se_hessian;
  std::optional<Eigen::VectorXd> se_bootstrap;
};

struct SeMethodSummary {
  SeMethod method = SeMethod::hessian;
  std::vector<double> mean;
  std::vector<double> sd;
  std::vector<double> median;
  std::size_t count = 0;
};

struct SeStudy {
  std::vector<std::string> names;
  std::vector<SeReplica> replicas;
  std::vector<ReplicaFailure> failures;
  std::vector<double> mc_sd;  // Monte Carlo SD of the estimates
  std::vector<SeMethodSummary> methods;
};

/// Replicas of simulate -> fit -> standard errors by each requested method.
SeStudy run_se_study(const Scenario& sc, const std::vector<SeMethod>& methods, std::size_t bootstrap_replicas,
                     int threads);

struct PowerPoint {
  double phi = 0.0;
  std::size_t replicas = 0;
  std::size_t lrt_valid = 0;
  std::size_t lrt_reject = 0;
  std::size_t score_valid = 0;
  std::size_t score_reject = 0;
  std::size_t fit_failures = 0;

  double lrt_rate() const { return lrt_valid ? static_cast<double>(lrt_reject) / static_cast<double>(lrt_valid) : 0.0; }
  double score_rate() const {
    return score_valid ? static_cast<double>(score_reject) / static_cast<double>(score_valid) : 0.0;
  }
};

/// Rejection rates of H0: phi = 0 at the given level for each phi in the grid;
/// the truth's phi is replaced by each grid value.
std::vector<PowerPoint> run_power_study(const Scenario& sc, const std::vector<double>& phi_grid, double level,
                                        bool with_lrt, bool with_score, int threads);

}  // namespace bcp
