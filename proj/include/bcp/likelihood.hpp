#pragma once

#include <optional>

#include <Eigen/Dense>

#include "bcp/param_layout.hpp"
#include "bcp/process.hpp"

namespace bcp {

/// Per-series sample means, the default starting lambda for filtering.
Vec2 sample_mean_init(const SeriesPair& s);

/// lambda_1 = init, lambda_t = omega + A lambda_{t-1} + B y_{t-1} for t = 2..n.
LambdaPath filter_lambda(const ModelParams& p, const SeriesPair& s, const Vec2& init);

struct LikelihoodEval {
  double loglik = 0.0;
  Eigen::VectorXd score;                  // empty unless requested
  std::optional<std::size_t> bad_index;   // first t (0-based) with a non-finite term
};

/// Conditional log-likelihood over t = 2..n, without the parameter-free lgamma terms.
/// Requires A diagonal. loglik is -inf when a term is non-finite.
LikelihoodEval evaluate_likelihood(const ModelParams& p, const SeriesPair& s, const Vec2& init,
                                   const ParamLayout& layout, bool with_score);

double log_likelihood(const ModelParams& p, const SeriesPair& s, const Vec2& init);

/// Analytic score over the free parameters of layout, via the lambda-derivative recursions.
Eigen::VectorXd score(const ModelParams& p, const SeriesPair& s, const Vec2& init, const ParamLayout& layout);

/// Per-observation scores U_t, one row per t = 2..n.
Eigen::MatrixXd observation_scores(const ModelParams& p, const SeriesPair& s, const Vec2& init,
                                   const ParamLayout& layout);

}  // namespace bcp
