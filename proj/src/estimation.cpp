#include "bcp/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "bcp/error.hpp"
#include "bcp/optimizer.hpp"
#include "bcp/rng.hpp"

namespace bcp {

namespace {

constexpr std::size_t kMinObservations = 20;

bool is_positive_param(Param p) { return p != Param::phi; }

struct Problem {
  const SeriesPair& series;
  ParamLayout layout;      // free parameters only (phi dropped when fixed)
  ModelParams base;
  Vec2 init;
  double n_used;
  double barrier_weight;
  double barrier_limit;

  ModelParams decode(const Eigen::VectorXd& u) const {
    Eigen::VectorXd theta = u;
    for (std::size_t i = 0; i < layout.size(); ++i) {
      if (is_positive_param(layout[i])) theta[static_cast<Eigen::Index>(i)] = std::exp(u[static_cast<Eigen::Index>(i)]);
    }
    return layout.unpack(theta, base);
  }

  Eigen::VectorXd encode(const ModelParams& m) const {
    Eigen::VectorXd u = layout.pack(m);
    for (std::size_t i = 0; i < layout.size(); ++i) {
      if (is_positive_param(layout[i])) {
        u[static_cast<Eigen::Index>(i)] = std::log(std::max(u[static_cast<Eigen::Index>(i)], 1e-10));
      }
    }
    return u;
  }

  // f = -loglik / (n-1) + c * max(0, ||A||_1 + ||B||_1 - (1 - eps))^2
  double operator()(const Eigen::VectorXd& u, Eigen::VectorXd& grad) const {
    const ModelParams m = decode(u);
    const auto eval = evaluate_likelihood(m, series, init, layout, true);
    grad.resize(u.size());
    if (eval.bad_index) return std::numeric_limits<double>::infinity();

    double f = -eval.loglik / n_used;
    for (Eigen::Index i = 0; i < u.size(); ++i) {
      const double chain = is_positive_param(layout[static_cast<std::size_t>(i)]) ? std::exp(u[i]) : 1.0;
      grad[i] = -eval.score[i] / n_used * chain;
    }

    const double alpha_max = std::max(m.a(0, 0), m.a(1, 1));
    const double col0 = m.b(0, 0) + m.b(1, 0);
    const double col1 = m.b(0, 1) + m.b(1, 1);
    const double excess = alpha_max + std::max(col0, col1) - barrier_limit;
    if (excess > 0.0) {
      f += barrier_weight * excess * excess;
      const double dpen = 2.0 * barrier_weight * excess;
      const Param alpha_arg = m.a(0, 0) >= m.a(1, 1) ? Param::alpha1 : Param::alpha2;
      const bool first_col = col0 >= col1;
      for (Eigen::Index i = 0; i < u.size(); ++i) {
        const Param q = layout[static_cast<std::size_t>(i)];
        const bool active = q == alpha_arg ||
                            (first_col && (q == Param::beta11 || q == Param::beta21)) ||
                            (!first_col && (q == Param::beta12 || q == Param::beta22));
        if (active) grad[i] += dpen * std::exp(u[i]);
      }
    }
    return f;
  }
};

ModelParams jittered(const ModelParams& m, const ParamLayout& layout, Rng& rng) {
  ModelParams out = m;
  for (Param q : layout.params()) {
    const double v = get_param(m, q);
    if (q == Param::phi) {
      set_param(out, q, v + 0.4 * (rng.uniform() - 0.5));
    } else {
      set_param(out, q, v * std::exp(rng.uniform() - 0.5));
    }
  }
  return out;
}

}  // namespace

void FitConfig::validate() const {
  if (!(grad_tol > 0.0) || max_iter < 1 || multi_start < 1 || !(barrier_weight >= 0.0) || !(barrier_eps > 0.0)) {
    throw DomainError("invalid FitConfig: tolerances must be positive and multi_start >= 1");
  }
}

std::uint64_t series_fingerprint(const SeriesPair& s) {
  // FNV-1a over the counts
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](std::int64_t v) {
    for (int b = 0; b < 8; ++b) {
      h ^= static_cast<std::uint64_t>((v >> (8 * b)) & 0xff);
      h *= 1099511628211ULL;
    }
  };
  mix(static_cast<std::int64_t>(s.size()));
  for (std::size_t t = 0; t < s.size(); ++t) {
    mix(s.y1[t]);
    mix(s.y2[t]);
  }
  return h;
}

ModelParams moment_start(const SeriesPair& s, bool b_diagonal) {
  const Vec2 mean = sample_mean_init(s);
  ModelParams m;
  m.omega = {0.2 * mean[0], 0.2 * mean[1]};
  m.a = Mat2::diag(0.3, 0.3);
  m.b_diagonal = b_diagonal;
  if (b_diagonal) {
    m.b = Mat2::diag(0.3, 0.3);
  } else {
    // off-diagonal entries start small; 0.3 + 0.3 + 0.05 keeps the start inside the barrier
    m.b = Mat2{{0.3, 0.05, 0.05, 0.3}};
  }
  m.phi = 0.0;
  return m;
}

FitResult fit(const SeriesPair& s, const FitConfig& cfg) {
  s.validate();
  cfg.validate();
  if (s.size() < kMinObservations) {
    std::ostringstream msg;
    msg << "fit needs at least " << kMinObservations << " observations, got " << s.size();
    throw DataError(msg.str());
  }

  const bool phi_free = !cfg.phi_fixed.has_value();
  Problem problem{s,
                  ParamLayout(cfg.b_diagonal, phi_free),
                  ModelParams{},
                  cfg.lambda_init ? *cfg.lambda_init : sample_mean_init(s),
                  static_cast<double>(s.size() - 1),
                  cfg.barrier_weight,
                  1.0 - cfg.barrier_eps};
  problem.base.b_diagonal = cfg.b_diagonal;
  problem.base.phi = cfg.phi_fixed.value_or(0.0);

  std::vector<ModelParams> starts;
  auto normalize = [&](ModelParams m) {
    m.b_diagonal = cfg.b_diagonal;
    if (cfg.b_diagonal) {
      m.b(0, 1) = 0.0;
      m.b(1, 0) = 0.0;
    } else {
      // a warm start from a diagonal fit still needs interior off-diagonal values
      m.b(0, 1) = std::max(m.b(0, 1), 1e-3);
      m.b(1, 0) = std::max(m.b(1, 0), 1e-3);
    }
    m.a(0, 1) = 0.0;
    m.a(1, 0) = 0.0;
    if (cfg.phi_fixed) m.phi = *cfg.phi_fixed;
    return m;
  };
  if (cfg.start) starts.push_back(normalize(*cfg.start));
  const ModelParams moment = normalize(moment_start(s, cfg.b_diagonal));
  if (starts.size() < static_cast<std::size_t>(cfg.multi_start)) starts.push_back(moment);
  Rng jitter_rng(cfg.jitter_seed);
  while (starts.size() < static_cast<std::size_t>(cfg.multi_start)) {
    starts.push_back(normalize(jittered(moment, problem.layout, jitter_rng)));
  }

  BfgsOptions options;
  options.grad_tol = cfg.grad_tol;
  options.max_iter = cfg.max_iter;
  const Objective objective = [&problem](const Eigen::VectorXd& u, Eigen::VectorXd& g) { return problem(u, g); };

  std::optional<BfgsResult> best;
  std::optional<BfgsResult> best_any;
  int converged_count = 0;
  int total_iterations = 0;
  for (const ModelParams& start : starts) {
    BfgsResult r = minimize_bfgs(objective, problem.encode(start), options);
    total_iterations += r.iterations;
    if (!std::isfinite(r.f)) continue;
    if (!best_any || r.f < best_any->f) best_any = r;
    if (r.converged) {
      ++converged_count;
      if (!best || r.f < best->f) best = r;
    }
  }

  auto make_result = [&](const BfgsResult& r) {
    FitResult out;
    out.theta = problem.decode(r.x);
    out.theta.b_diagonal = cfg.b_diagonal;
    out.layout = problem.layout;
    out.loglik = log_likelihood(out.theta, s, problem.init);
    out.gradient_norm = r.grad_norm;
    out.converged = r.converged;
    out.stationarity_margin = stationarity_check(out.theta).margin;
    out.n_used = s.size() - 1;
    out.k = problem.layout.size();
    const double k = static_cast<double>(out.k);
    out.aic = -2.0 * out.loglik + 2.0 * k;
    out.bic = -2.0 * out.loglik + k * std::log(static_cast<double>(out.n_used));
    out.iterations = total_iterations;
    out.starts_converged = converged_count;
    out.lambda_init = problem.init;
    out.data_fingerprint = series_fingerprint(s);
    return out;
  };

  if (!best) {
    if (!best_any) throw NumericalError("fit: objective not finite at any starting point");
    std::ostringstream msg;
    msg << "fit: no start converged (best gradient norm " << best_any->grad_norm << ", " << best_any->message << ")";
    throw FitFailure(msg.str(), make_result(*best_any));
  }
  return make_result(*best);
}

}  // namespace bcp
