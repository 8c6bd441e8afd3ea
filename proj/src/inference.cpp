#include "bcp/inference.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "bcp/error.hpp"
#include "bcp/parallel.hpp"
#include "bcp/rng.hpp"

namespace bcp {

namespace {

constexpr std::uint64_t kBootstrapStream = 0xb0075ULL;

Eigen::VectorXd inverse_diagonal(const Eigen::MatrixXd& m, const char* what) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m);
  const double smallest = eig.eigenvalues().minCoeff();
  const double largest = eig.eigenvalues().cwiseAbs().maxCoeff();
  if (!(smallest > 1e-12 * std::max(largest, 1e-300))) {
    std::ostringstream msg;
    msg << what << " information matrix is singular or indefinite (smallest eigenvalue " << smallest << ")";
    throw NumericalError(msg.str());
  }
  const Eigen::MatrixXd inv = eig.eigenvectors() * eig.eigenvalues().cwiseInverse().asDiagonal() *
                              eig.eigenvectors().transpose();
  return inv.diagonal();
}

FitConfig null_config(const FitConfig& cfg) {
  FitConfig c = cfg;
  c.phi_fixed = 0.0;
  return c;
}

}  // namespace

std::string to_string(SeMethod m) {
  switch (m) {
    case SeMethod::outer: return "outer";
    case SeMethod::hessian: return "hessian";
    case SeMethod::bootstrap: return "bootstrap";
  }
  return "hessian";
}

SeMethod se_method_from_string(const std::string& s) {
  if (s == "outer") return SeMethod::outer;
  if (s == "hessian") return SeMethod::hessian;
  if (s == "bootstrap") return SeMethod::bootstrap;
  throw DataError("unknown SE method '" + s + "' (expected outer, hessian, or bootstrap)");
}

Eigen::MatrixXd info_outer(const ModelParams& theta, const SeriesPair& s, const Vec2& init,
                           const ParamLayout& layout) {
  const Eigen::MatrixXd u = observation_scores(theta, s, init, layout);
  Eigen::MatrixXd m = (u.transpose() * u) / static_cast<double>(u.rows());
  return 0.5 * (m + m.transpose());
}

double hessian_step(double value) { return 1e-5 * std::max(1.0, std::fabs(value)); }

HessianInfo info_hessian(const ModelParams& theta, const SeriesPair& s, const Vec2& init, const ParamLayout& layout) {
  const auto k = static_cast<Eigen::Index>(layout.size());
  const Eigen::VectorXd base = layout.pack(theta);
  Eigen::MatrixXd h(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    const double step = hessian_step(base[i]);
    Eigen::VectorXd plus = base;
    Eigen::VectorXd minus = base;
    plus[i] += step;
    minus[i] -= step;
    h.col(i) = (score(layout.unpack(plus, theta), s, init, layout) - score(layout.unpack(minus, theta), s, init, layout)) /
               (2.0 * step);
  }
  HessianInfo out;
  const double n_used = static_cast<double>(s.size() - 1);
  out.matrix = -0.5 * (h + h.transpose()) / n_used;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(out.matrix, Eigen::EigenvaluesOnly);
  out.psd_warning = eig.eigenvalues().minCoeff() <= 0.0;
  return out;
}

std::vector<Eigen::MatrixXd> observation_hessians(const ModelParams& theta, const SeriesPair& s, const Vec2& init,
                                                  const ParamLayout& layout) {
  const auto k = static_cast<Eigen::Index>(layout.size());
  const Eigen::VectorXd base = layout.pack(theta);
  std::vector<Eigen::MatrixXd> out(s.size() - 1, Eigen::MatrixXd(k, k));
  for (Eigen::Index i = 0; i < k; ++i) {
    const double step = hessian_step(base[i]);
    Eigen::VectorXd plus = base;
    Eigen::VectorXd minus = base;
    plus[i] += step;
    minus[i] -= step;
    const Eigen::MatrixXd up = observation_scores(layout.unpack(plus, theta), s, init, layout);
    const Eigen::MatrixXd um = observation_scores(layout.unpack(minus, theta), s, init, layout);
    for (std::size_t t = 0; t < out.size(); ++t) {
      out[t].col(i) = (up.row(static_cast<Eigen::Index>(t)) - um.row(static_cast<Eigen::Index>(t))).transpose() /
                      (2.0 * step);
    }
  }
  for (auto& m : out) m = 0.5 * (m + m.transpose()).eval();
  return out;
}

SeResult se_asymptotic(const FitResult& fit, const SeriesPair& s, SeMethod method) {
  if (method == SeMethod::bootstrap) throw DomainError("se_asymptotic: bootstrap is not an asymptotic method");
  SeResult out;
  out.method = method;
  out.names = fit.layout.names();
  const Eigen::MatrixXd m = method == SeMethod::outer ? info_outer(fit.theta, s, fit.lambda_init, fit.layout)
                                                      : info_hessian(fit.theta, s, fit.lambda_init, fit.layout).matrix;
  const Eigen::VectorXd d = inverse_diagonal(m, method == SeMethod::outer ? "outer-product" : "Hessian");
  out.se = (d / static_cast<double>(s.size() - 1)).cwiseSqrt();
  return out;
}

SeResult se_bootstrap(const FitResult& fit, const SeriesPair& s, const FitConfig& cfg, const BootstrapOptions& opt) {
  if (opt.replicas < 2) throw DomainError("se_bootstrap: need at least 2 replicas");
  SeResult out;
  out.method = SeMethod::bootstrap;
  out.names = fit.layout.names();
  out.replicas_requested = opt.replicas;

  FitConfig refit_cfg = cfg;
  refit_cfg.start = fit.theta;
  refit_cfg.multi_start = 1;
  refit_cfg.lambda_init.reset();
  const std::size_t n = s.size();

  auto results = parallel_map<Eigen::VectorXd>(opt.replicas, opt.threads, [&](std::size_t b) {
    const auto sim = simulate(fit.theta, n, opt.burn_in, std::nullopt, derive_seed(opt.seed, kBootstrapStream, b));
    const FitResult r = bcp::fit(sim.series, refit_cfg);
    return Eigen::VectorXd(fit.layout.pack(r.theta));
  });

  std::vector<Eigen::VectorXd> kept;
  for (auto& r : results) {
    if (r.value) {
      kept.push_back(std::move(*r.value));
    } else {
      ++out.replicas_dropped;
    }
  }
  if (static_cast<double>(out.replicas_dropped) > opt.max_drop_fraction * static_cast<double>(opt.replicas) ||
      kept.size() < 2) {
    std::ostringstream msg;
    msg << "se_bootstrap: " << out.replicas_dropped << " of " << opt.replicas << " replicas failed to converge";
    throw NumericalError(msg.str());
  }
  const auto k = static_cast<Eigen::Index>(fit.layout.size());
  out.replicates.resize(static_cast<Eigen::Index>(kept.size()), k);
  for (std::size_t i = 0; i < kept.size(); ++i) out.replicates.row(static_cast<Eigen::Index>(i)) = kept[i].transpose();
  const Eigen::RowVectorXd mean = out.replicates.colwise().mean();
  const Eigen::MatrixXd centered = out.replicates.rowwise() - mean;
  out.se = (centered.colwise().squaredNorm() / static_cast<double>(kept.size() - 1)).cwiseSqrt().transpose();
  return out;
}

double chi2_1_sf(double statistic) {
  if (!(statistic > 0.0)) return 1.0;
  return std::erfc(std::sqrt(0.5 * statistic));
}

namespace {

TestResult lrt_from_null(const SeriesPair& s, const FitConfig& cfg, const FitResult& null_fit) {
  TestResult out;
  out.name = "likelihood_ratio";
  out.null_fit = null_fit;

  FitConfig alt_cfg = cfg;
  alt_cfg.phi_fixed.reset();
  // the null solution is a feasible start for the alternative, so the nesting holds
  if (!alt_cfg.start) alt_cfg.start = null_fit.theta;
  FitResult alt = fit(s, alt_cfg);
  double stat = -2.0 * (null_fit.loglik - alt.loglik);
  if (stat < -1e-6) {
    FitConfig warm = alt_cfg;
    warm.start = null_fit.theta;
    warm.multi_start = 1;
    FitResult refit = fit(s, warm);
    out.refit = true;
    if (refit.loglik > alt.loglik) alt = refit;
    stat = -2.0 * (null_fit.loglik - alt.loglik);
  }
  out.statistic = std::max(stat, 0.0);
  out.p_value = chi2_1_sf(out.statistic);
  out.alt_fit = std::move(alt);
  return out;
}

TestResult score_from_null(const SeriesPair& s, const FitConfig& cfg, const FitResult& null_fit) {
  TestResult out;
  out.name = "score";
  out.null_fit = null_fit;
  const ParamLayout full = ParamLayout::full(cfg.b_diagonal);
  const ModelParams& theta = null_fit.theta;
  const Vec2 init = null_fit.lambda_init;
  const Eigen::VectorXd u = score(theta, s, init, full);
  const HessianInfo info = info_hessian(theta, s, init, full);
  const Eigen::LDLT<Eigen::MatrixXd> ldlt(info.matrix);
  if (info.psd_warning || ldlt.info() != Eigen::Success || !ldlt.isPositive()) {
    throw NumericalError(
        "score test: information matrix at the null fit is not positive definite; use the likelihood-ratio test");
  }
  const double n_used = static_cast<double>(s.size() - 1);
  out.statistic = std::max(u.dot(ldlt.solve(u)) / n_used, 0.0);
  out.p_value = chi2_1_sf(out.statistic);
  return out;
}

}  // namespace

TestResult lrt_phi(const SeriesPair& s, const FitConfig& cfg) {
  return lrt_from_null(s, cfg, fit(s, null_config(cfg)));
}

TestResult score_test_phi(const SeriesPair& s, const FitConfig& cfg) {
  return score_from_null(s, cfg, fit(s, null_config(cfg)));
}

PhiTests test_phi(const SeriesPair& s, const FitConfig& cfg, bool with_lrt, bool with_score) {
  PhiTests out;
  out.null_fit = fit(s, null_config(cfg));
  if (with_lrt) {
    try {
      out.lrt = lrt_from_null(s, cfg, *out.null_fit);
    } catch (const std::exception& e) {
      out.lrt_error = e.what();
    }
  }
  if (with_score) {
    try {
      out.score = score_from_null(s, cfg, *out.null_fit);
    } catch (const std::exception& e) {
      out.score_error = e.what();
    }
  }
  return out;
}

PhiBound competitor_phi_bound(const FitResult& fit, const SeriesPair& s) {
  const ModelParams& p = fit.theta;
  if (!p.a.is_diagonal()) throw DomainError("competitor_phi_bound requires a diagonal A");
  const double one_minus[2] = {1.0 - p.a(0, 0), 1.0 - p.a(1, 1)};
  if (!(one_minus[0] > 0.0) || !(one_minus[1] > 0.0)) {
    throw NumericalError("competitor_phi_bound: I - A is singular or rho(A) >= 1");
  }
  PhiBound out;
  out.phi_max = std::min(p.omega[0] / one_minus[0], p.omega[1] / one_minus[1]);
  const LambdaPath path = filter_lambda(p, s, fit.lambda_init);
  out.max_corr_path.reserve(path.size());
  for (std::size_t t = 0; t < path.size(); ++t) {
    out.max_corr_path.push_back(out.phi_max / std::sqrt(path.lam1[t] * path.lam2[t]));
  }
  return out;
}

ModelRanking model_select(const std::vector<FitResult>& fits) {
  for (const auto& f : fits) {
    if (f.data_fingerprint != fits.front().data_fingerprint || f.n_used != fits.front().n_used) {
      throw DomainError("model_select: fits refer to different data");
    }
  }
  ModelRanking out;
  out.by_aic.resize(fits.size());
  std::iota(out.by_aic.begin(), out.by_aic.end(), std::size_t{0});
  out.by_bic = out.by_aic;
  std::stable_sort(out.by_aic.begin(), out.by_aic.end(),
                   [&](std::size_t a, std::size_t b) { return fits[a].aic < fits[b].aic; });
  std::stable_sort(out.by_bic.begin(), out.by_bic.end(),
                   [&](std::size_t a, std::size_t b) { return fits[a].bic < fits[b].bic; });
  return out;
}

}  // namespace bcp
