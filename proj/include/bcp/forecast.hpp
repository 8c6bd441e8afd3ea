#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bcp/bcp_dist.hpp"
#include "bcp/estimation.hpp"

namespace bcp {

struct ForecastRecord {
  std::size_t t = 0;  // 0-based index of the predicted observation
  Vec2 lambda_next{};
  CountPair point_joint{};
  std::optional<Count> point_conditional;
  std::optional<CountPair> actual;
};

/// Filter lambda through the end of s, advance once, and predict the joint mode.
ForecastRecord one_step(const ModelParams& theta, const SeriesPair& s, const Vec2& init);
ForecastRecord one_step(const FitResult& fit, const SeriesPair& s);

/// Mode of Y2 given the next Y1: Poisson with mean lambda2 exp(-lambda1 (e^phi - 1) + phi y1_next).
Count conditional_one_step(const ModelParams& theta, const SeriesPair& s, const Vec2& init, Count y1_next);
Count conditional_one_step(const FitResult& fit, const SeriesPair& s, Count y1_next);

/// Predictive pmf of the next pair over a truncated grid, row-major in y1.
struct ForecastDistribution {
  std::int64_t max_y1 = 0;
  std::int64_t max_y2 = 0;
  std::vector<double> pmf;
};

ForecastDistribution forecast_distribution(const ForecastRecord& rec, double phi);

struct ErrorMetrics {
  std::vector<double> rmsfe;  // running root mean-square error after each prediction
  double rmse = 0.0;
  double mae = 0.0;
};

/// Accumulated error metrics; the last RMSFE entry equals rmse exactly.
ErrorMetrics error_metrics(std::span<const Count> actual, std::span<const Count> predicted);

struct RollingOptions {
  bool conditional_on_first = false;
  std::optional<ModelParams> frozen;  // when set, no refits: predict every step with this theta
};

struct RollingEval {
  std::vector<ForecastRecord> records;
  ErrorMetrics joint[2];
  std::optional<ErrorMetrics> conditional;  // component 2 given the realized component 1
  bool complete = true;
  std::optional<std::size_t> failed_at;
  std::string error;
};

/// For t = n0..n-1, fit on the first t observations (warm-started at the previous
/// estimate) and predict observation t+1.
RollingEval rolling_eval(const SeriesPair& s, std::size_t n0, const FitConfig& cfg, const RollingOptions& opt = {});

}  // namespace bcp
