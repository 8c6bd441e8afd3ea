#include "bcp/forecast.hpp"

#include <cmath>
#include <sstream>

#include "bcp/error.hpp"

namespace bcp {

namespace {

constexpr std::size_t kMinTrainingPrefix = 20;

Vec2 advanced_lambda(const ModelParams& theta, const SeriesPair& s, const Vec2& init) {
  const LambdaPath path = filter_lambda(theta, s, init);
  const std::size_t last = s.size() - 1;
  return lambda_update({path.lam1[last], path.lam2[last]}, s.y1[last], s.y2[last], theta);
}

}  // namespace

ForecastRecord one_step(const ModelParams& theta, const SeriesPair& s, const Vec2& init) {
  if (s.size() == 0) throw DataError("one_step: empty series");
  ForecastRecord rec;
  rec.t = s.size();
  rec.lambda_next = advanced_lambda(theta, s, init);
  rec.point_joint = joint_mode({rec.lambda_next[0], rec.lambda_next[1], theta.phi});
  return rec;
}

ForecastRecord one_step(const FitResult& fit, const SeriesPair& s) { return one_step(fit.theta, s, fit.lambda_init); }

Count conditional_one_step(const ModelParams& theta, const SeriesPair& s, const Vec2& init, Count y1_next) {
  if (y1_next < 0) throw DataError("conditional_one_step: y1_next must be nonnegative");
  const Vec2 lam = advanced_lambda(theta, s, init);
  const double log_mean =
      std::log(lam[1]) - lam[0] * std::expm1(theta.phi) + theta.phi * static_cast<double>(y1_next);
  const double mean = std::exp(log_mean);
  if (!std::isfinite(mean) || mean > 4.0e15) {
    std::ostringstream msg;
    msg << "conditional mean overflows (log mean " << log_mean << ") at y1_next = " << y1_next;
    throw NumericalError(msg.str());
  }
  return poisson_mode(mean);
}

Count conditional_one_step(const FitResult& fit, const SeriesPair& s, Count y1_next) {
  return conditional_one_step(fit.theta, s, fit.lambda_init, y1_next);
}

ForecastDistribution forecast_distribution(const ForecastRecord& rec, double phi) {
  const BcpParams p{rec.lambda_next[0], rec.lambda_next[1], phi};
  ForecastDistribution out;
  out.max_y1 = joint_mode_window(p.lambda1);
  const double sd2 = std::sqrt(variance_z2(p));
  out.max_y2 = static_cast<std::int64_t>(std::ceil(p.lambda2 + 12.0 * sd2 + 20.0));
  out.pmf = pmf_grid(p, out.max_y1, out.max_y2);
  return out;
}

ErrorMetrics error_metrics(std::span<const Count> actual, std::span<const Count> predicted) {
  if (actual.size() != predicted.size()) throw DataError("error_metrics: length mismatch");
  ErrorMetrics out;
  out.rmsfe.reserve(actual.size());
  double sq = 0.0;
  double abs_sum = 0.0;
  for (std::size_t i = 0; i < actual.size(); ++i) {
    const double e = static_cast<double>(actual[i] - predicted[i]);
    sq += e * e;
    abs_sum += std::fabs(e);
    out.rmsfe.push_back(std::sqrt(sq / static_cast<double>(i + 1)));
  }
  if (!actual.empty()) {
    out.rmse = out.rmsfe.back();
    out.mae = abs_sum / static_cast<double>(actual.size());
  }
  return out;
}

RollingEval rolling_eval(const SeriesPair& s, std::size_t n0, const FitConfig& cfg, const RollingOptions& opt) {
  s.validate();
  if (n0 < kMinTrainingPrefix || n0 >= s.size()) {
    std::ostringstream msg;
    msg << "rolling_eval: need 20 <= n0 < n, got n0 = " << n0 << ", n = " << s.size();
    throw DataError(msg.str());
  }
  RollingEval out;
  FitConfig step_cfg = cfg;
  for (std::size_t t = n0; t < s.size(); ++t) {
    const SeriesPair prefix = s.prefix(t);
    try {
      ForecastRecord rec;
      std::optional<Count> cond;
      if (opt.frozen) {
        const Vec2 init = cfg.lambda_init ? *cfg.lambda_init : sample_mean_init(prefix);
        rec = one_step(*opt.frozen, prefix, init);
        if (opt.conditional_on_first) cond = conditional_one_step(*opt.frozen, prefix, init, s.y1[t]);
      } else {
        const FitResult f = fit(prefix, step_cfg);
        step_cfg.start = f.theta;
        rec = one_step(f, prefix);
        if (opt.conditional_on_first) cond = conditional_one_step(f, prefix, s.y1[t]);
      }
      rec.t = t;
      rec.actual = CountPair{s.y1[t], s.y2[t]};
      rec.point_conditional = cond;
      out.records.push_back(rec);
    } catch (const std::exception& e) {
      out.complete = false;
      out.failed_at = t;
      out.error = e.what();
      break;
    }
  }

  std::vector<Count> a1, a2, p1, p2, pc;
  for (const auto& r : out.records) {
    a1.push_back(r.actual->first);
    a2.push_back(r.actual->second);
    p1.push_back(r.point_joint.first);
    p2.push_back(r.point_joint.second);
    if (r.point_conditional) pc.push_back(*r.point_conditional);
  }
  out.joint[0] = error_metrics(a1, p1);
  out.joint[1] = error_metrics(a2, p2);
  if (opt.conditional_on_first) out.conditional = error_metrics(a2, pc);
  return out;
}

}  // namespace bcp
