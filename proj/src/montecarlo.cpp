#include "bcp/montecarlo.hpp"

#include <algorithm>
#include <cmath>

#include "bcp/error.hpp"
#include "bcp/parallel.hpp"
#include "bcp/rng.hpp"

namespace bcp {

namespace {

constexpr std::uint64_t kEstimationStream = 1;
constexpr std::uint64_t kSeStream = 2;
constexpr std::uint64_t kSeBootstrapStream = 3;
constexpr std::uint64_t kPowerStreamBase = 1000;

std::string error_message(const std::exception_ptr& err) {
  try {
    std::rethrow_exception(err);
  } catch (const std::exception& e) {
    return e.what();
  } catch (...) {
    return "unknown error";
  }
}

ModelParams make_params(const Vec2& omega, double a1, double a2, const Mat2& b, bool b_diagonal, double phi) {
  ModelParams m;
  m.omega = omega;
  m.a = Mat2::diag(a1, a2);
  m.b = b;
  m.b_diagonal = b_diagonal;
  m.phi = phi;
  return m;
}

double median_of(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t mid = v.size() / 2;
  return v.size() % 2 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

}  // namespace

std::optional<Scenario> preset_scenario(const std::string& name) {
  Scenario sc;
  sc.name = name;
  if (name == "a" || name == "b") {
    sc.truth = make_params({1.0, 1.0}, 0.3, 0.2, Mat2{{0.3, 0.1, 0.2, 0.2}}, false, name == "a" ? 0.1 : -0.1);
    sc.fit.b_diagonal = false;
  } else if (name == "scenario1") {
    sc.truth = make_params({1.0, 1.0}, 0.4, 0.3, Mat2::diag(0.2, 0.4), true, 0.0);
    sc.fit.b_diagonal = true;
  } else if (name == "se") {
    sc.truth = make_params({1.0, 0.5}, 0.4, 0.3, Mat2::diag(0.2, 0.4), true, 0.7);
    sc.fit.b_diagonal = true;
  } else {
    return std::nullopt;
  }
  return sc;
}

std::vector<std::string> preset_names() { return {"a", "b", "scenario1", "se"}; }

std::vector<ParamSummary> summarize(const std::vector<std::string>& names, const Eigen::VectorXd& truth,
                                    const std::vector<Eigen::VectorXd>& estimates) {
  std::vector<ParamSummary> out;
  const double count = static_cast<double>(estimates.size());
  for (std::size_t j = 0; j < names.size(); ++j) {
    const auto jj = static_cast<Eigen::Index>(j);
    ParamSummary ps;
    ps.name = names[j];
    ps.truth = truth[jj];
    ps.count = estimates.size();
    if (!estimates.empty()) {
      double sum = 0.0;
      for (const auto& e : estimates) sum += e[jj];
      ps.mean = sum / count;
      double ss = 0.0;
      double se = 0.0;
      for (const auto& e : estimates) {
        ss += (e[jj] - ps.mean) * (e[jj] - ps.mean);
        se += (e[jj] - ps.truth) * (e[jj] - ps.truth);
      }
      ps.sd = estimates.size() > 1 ? std::sqrt(ss / (count - 1.0)) : 0.0;
      ps.mse = se / count;
    }
    out.push_back(ps);
  }
  return out;
}

EstimationStudy run_estimation_study(const Scenario& sc, int threads) {
  const ParamLayout layout(sc.fit.b_diagonal, !sc.fit.phi_fixed.has_value());
  struct Replica {
    Eigen::VectorXd estimate;
    double loglik;
  };
  auto results = parallel_map<Replica>(sc.replicas, threads, [&](std::size_t r) {
    const auto sim = simulate(sc.truth, sc.n, sc.burn_in, std::nullopt, derive_seed(sc.seed, kEstimationStream, r));
    const FitResult f = fit(sim.series, sc.fit);
    return Replica{layout.pack(f.theta), f.loglik};
  });

  EstimationStudy out;
  out.names = layout.names();
  for (std::size_t r = 0; r < results.size(); ++r) {
    if (results[r].value) {
      out.replica_index.push_back(r);
      out.estimates.push_back(results[r].value->estimate);
      out.loglik.push_back(results[r].value->loglik);
    } else {
      out.failures.push_back({r, error_message(results[r].error)});
    }
  }
  out.summary = summarize(out.names, layout.pack(sc.truth), out.estimates);
  return out;
}

SeStudy run_se_study(const Scenario& sc, const std::vector<SeMethod>& methods, std::size_t bootstrap_replicas,
                     int threads) {
  const ParamLayout layout(sc.fit.b_diagonal, !sc.fit.phi_fixed.has_value());
  auto wants = [&](SeMethod m) { return std::find(methods.begin(), methods.end(), m) != methods.end(); };

  auto results = parallel_map<SeReplica>(sc.replicas, threads, [&](std::size_t r) {
    const auto sim = simulate(sc.truth, sc.n, sc.burn_in, std::nullopt, derive_seed(sc.seed, kSeStream, r));
    const FitResult f = fit(sim.series, sc.fit);
    SeReplica rep;
    rep.index = r;
    rep.estimate = layout.pack(f.theta);
    // a failed method leaves its slot empty; the replica still counts for the others
    if (wants(SeMethod::outer)) {
      try {
        rep.se_outer = se_asymptotic(f, sim.series, SeMethod::outer).se;
      } catch (const NumericalError&) {
      }
    }
    if (wants(SeMethod::hessian)) {
      try {
        rep.se_hessian = se_asymptotic(f, sim.series, SeMethod::hessian).se;
      } catch (const NumericalError&) {
      }
    }
    if (wants(SeMethod::bootstrap)) {
      BootstrapOptions opt;
      opt.replicas = bootstrap_replicas;
      opt.seed = derive_seed(sc.seed, kSeBootstrapStream, r);
      opt.burn_in = sc.burn_in;
      opt.threads = 1;
      try {
        rep.se_bootstrap = se_bootstrap(f, sim.series, sc.fit, opt).se;
      } catch (const NumericalError&) {
      }
    }
    return rep;
  });

  SeStudy out;
  out.names = layout.names();
  std::vector<Eigen::VectorXd> estimates;
  for (std::size_t r = 0; r < results.size(); ++r) {
    if (results[r].value) {
      estimates.push_back(results[r].value->estimate);
      out.replicas.push_back(std::move(*results[r].value));
    } else {
      out.failures.push_back({r, error_message(results[r].error)});
    }
  }
  for (const auto& ps : summarize(out.names, layout.pack(sc.truth), estimates)) out.mc_sd.push_back(ps.sd);

  for (SeMethod m : methods) {
    SeMethodSummary ms;
    ms.method = m;
    const std::size_t k = out.names.size();
    std::vector<std::vector<double>> cols(k);
    for (const auto& rep : out.replicas) {
      const auto& se = m == SeMethod::outer ? rep.se_outer : (m == SeMethod::hessian ? rep.se_hessian : rep.se_bootstrap);
      if (!se || !se->allFinite()) continue;
      ++ms.count;
      for (std::size_t j = 0; j < k; ++j) cols[j].push_back((*se)[static_cast<Eigen::Index>(j)]);
    }
    for (std::size_t j = 0; j < k; ++j) {
      const auto& c = cols[j];
      double mean = 0.0;
      for (double v : c) mean += v;
      mean = c.empty() ? 0.0 : mean / static_cast<double>(c.size());
      double ss = 0.0;
      for (double v : c) ss += (v - mean) * (v - mean);
      ms.mean.push_back(mean);
      ms.sd.push_back(c.size() > 1 ? std::sqrt(ss / static_cast<double>(c.size() - 1)) : 0.0);
      ms.median.push_back(median_of(c));
    }
    out.methods.push_back(std::move(ms));
  }
  return out;
}

std::vector<PowerPoint> run_power_study(const Scenario& sc, const std::vector<double>& phi_grid, double level,
                                        bool with_lrt, bool with_score, int threads) {
  std::vector<PowerPoint> out;
  for (std::size_t g = 0; g < phi_grid.size(); ++g) {
    ModelParams truth = sc.truth;
    truth.phi = phi_grid[g];
    struct Outcome {
      std::optional<bool> lrt_reject;
      std::optional<bool> score_reject;
    };
    auto results = parallel_map<Outcome>(sc.replicas, threads, [&](std::size_t r) {
      const auto sim = simulate(truth, sc.n, sc.burn_in, std::nullopt, derive_seed(sc.seed, kPowerStreamBase + g, r));
      const PhiTests tests = test_phi(sim.series, sc.fit, with_lrt, with_score);
      Outcome o;
      if (tests.lrt) o.lrt_reject = tests.lrt->p_value < level;
      if (tests.score) o.score_reject = tests.score->p_value < level;
      return o;
    });
    PowerPoint pp;
    pp.phi = phi_grid[g];
    pp.replicas = sc.replicas;
    for (const auto& r : results) {
      if (!r.value) {
        ++pp.fit_failures;
        continue;
      }
      if (r.value->lrt_reject) {
        ++pp.lrt_valid;
        pp.lrt_reject += *r.value->lrt_reject ? 1 : 0;
      }
      if (r.value->score_reject) {
        ++pp.score_valid;
        pp.score_reject += *r.value->score_reject ? 1 : 0;
      }
    }
    out.push_back(pp);
  }
  return out;
}

}  // namespace bcp
