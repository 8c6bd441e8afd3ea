#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "bcp/estimation.hpp"

namespace bcp {

enum class SeMethod { outer, hessian, bootstrap };

std::string to_string(SeMethod m);
SeMethod se_method_from_string(const std::string& s);

/// S_n = (1/(n-1)) sum_t U_t U_t^T.
Eigen::MatrixXd info_outer(const ModelParams& theta, const SeriesPair& s, const Vec2& init,
                           const ParamLayout& layout);

struct HessianInfo {
  Eigen::MatrixXd matrix;    // D_n = -(1/(n-1)) sum_t H_t, symmetrized
  bool psd_warning = false;  // D_n has a non-positive eigenvalue
};

/// Step used for central differences of the analytic score.
double hessian_step(double value);

/// D_n from central finite differences of the analytic score.
HessianInfo info_hessian(const ModelParams& theta, const SeriesPair& s, const Vec2& init, const ParamLayout& layout);

/// Per-observation Hessians H_t (t = 2..n) by central differences of the per-observation scores.
std::vector<Eigen::MatrixXd> observation_hessians(const ModelParams& theta, const SeriesPair& s, const Vec2& init,
                                                  const ParamLayout& layout);

struct SeResult {
  SeMethod method = SeMethod::hessian;
  std::vector<std::string> names;
  Eigen::VectorXd se;
  Eigen::MatrixXd replicates;  // bootstrap estimates, one row per kept replica
  std::size_t replicas_requested = 0;
  std::size_t replicas_dropped = 0;
};

/// se = sqrt(diag(M^{-1}) / (n-1)) with M = S_n or D_n at the fitted parameters.
SeResult se_asymptotic(const FitResult& fit, const SeriesPair& s, SeMethod method);

constexpr std::size_t kDefaultBootstrapReplicas = 500;

struct BootstrapOptions {
  std::size_t replicas = kDefaultBootstrapReplicas;
  std::uint64_t seed = 0;
  std::size_t burn_in = kDefaultBurnIn;
  int threads = 1;
  double max_drop_fraction = 0.2;
};

/// Parametric bootstrap: simulate at theta_hat, refit each trajectory, report the
/// empirical SD of the estimates. Non-converged replicas are dropped and counted.
SeResult se_bootstrap(const FitResult& fit, const SeriesPair& s, const FitConfig& cfg, const BootstrapOptions& opt);

/// Upper-tail probability of a chi-square(1) variate.
double chi2_1_sf(double statistic);

struct TestResult {
  std::string name;
  double statistic = 0.0;
  int df = 1;
  double p_value = 1.0;
  FitResult null_fit;
  std::optional<FitResult> alt_fit;
  bool refit = false;  // alternative refitted from the null solution
};

/// -2 (l(theta_null) - l(theta_alt)) for H0: phi = 0.
TestResult lrt_phi(const SeriesPair& s, const FitConfig& cfg);

/// U(theta_null)^T I^{-1}(theta_null) U(theta_null), I = (n-1) D_n over the full parameter vector.
TestResult score_test_phi(const SeriesPair& s, const FitConfig& cfg);

struct PhiTests {
  std::optional<FitResult> null_fit;
  std::optional<TestResult> lrt;
  std::optional<TestResult> score;
  std::string lrt_error;
  std::string score_error;
};

/// Both tests sharing one null fit. Per-test failures are reported in the *_error fields;
/// a failed null fit propagates.
PhiTests test_phi(const SeriesPair& s, const FitConfig& cfg, bool with_lrt = true, bool with_score = true);

struct PhiBound {
  double phi_max = 0.0;
  std::vector<double> max_corr_path;
};

/// Upper limit min((I - A)^{-1} omega) on phi for the trivariate-reduction bivariate
/// Poisson model, and its maximal correlation phi_max / sqrt(lambda1t lambda2t).
PhiBound competitor_phi_bound(const FitResult& fit, const SeriesPair& s);

struct ModelRanking {
  std::vector<std::size_t> by_aic;
  std::vector<std::size_t> by_bic;
};

/// Stable ranking by AIC and BIC. Throws DomainError when fits refer to different data.
ModelRanking model_select(const std::vector<FitResult>& fits);

}  // namespace bcp
