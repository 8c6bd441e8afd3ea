#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "bcp/error.hpp"
#include "bcp/likelihood.hpp"
#include "bcp/param_layout.hpp"
#include "bcp/process.hpp"

namespace bcp {

struct FitConfig {
  bool b_diagonal = false;
  std::optional<double> phi_fixed;     // set to 0 to fit under H0
  std::optional<Vec2> lambda_init;     // default: per-series sample means
  double grad_tol = 1e-6;              // max-abs gradient of the per-observation objective
  int max_iter = 500;
  int multi_start = 3;
  double barrier_weight = 1e4;
  double barrier_eps = 1e-3;
  std::optional<ModelParams> start;    // warm start, tried first
  std::uint64_t jitter_seed = 0x5eedULL;

  /// Throws DomainError on non-positive tolerances or multi_start < 1.
  void validate() const;
};

struct FitResult {
  ModelParams theta;
  double loglik = 0.0;
  double gradient_norm = 0.0;
  bool converged = false;
  double stationarity_margin = 0.0;
  std::size_t n_used = 0;  // n - 1 terms
  std::size_t k = 0;       // free parameter count
  double aic = 0.0;
  double bic = 0.0;
  int iterations = 0;
  int starts_converged = 0;
  Vec2 lambda_init{};
  ParamLayout layout;
  std::uint64_t data_fingerprint = 0;
};

/// Non-convergence across all starts; carries the best point seen.
class FitFailure : public NumericalError {
 public:
  FitFailure(const std::string& what, FitResult best) : NumericalError(what), best_(std::move(best)) {}
  const FitResult& best() const { return best_; }

 private:
  FitResult best_;
};

/// Hash of the observed counts, used to check that fits refer to the same data.
std::uint64_t series_fingerprint(const SeriesPair& s);

/// Moment-style starting point: omega = 0.2 * sample means, alpha = 0.3, beta = 0.3 I, phi = 0.
ModelParams moment_start(const SeriesPair& s, bool b_diagonal);

/// Conditional maximum likelihood over the log-reparameterized free parameters.
FitResult fit(const SeriesPair& s, const FitConfig& cfg = {});

}  // namespace bcp
