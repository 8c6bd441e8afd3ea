// Acceptance checks: one PASS/FAIL line per criterion.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <bcp/bcp_dist.hpp>
#include <bcp/estimation.hpp>
#include <bcp/forecast.hpp>
#include <bcp/inference.hpp>
#include <bcp/json_io.hpp>
#include <bcp/lambert_w.hpp>
#include <bcp/likelihood.hpp>
#include <bcp/montecarlo.hpp>
#include <bcp/parallel.hpp>
#include <bcp/rng.hpp>

#include "random_instances.hpp"

using namespace bcp;
namespace fs = std::filesystem;

namespace {

namespace tol {
// 1: Monte Carlo means, configuration (a) and (b)
constexpr double kPhiMean = 0.005;
constexpr double kBetaMean = 0.03;
constexpr double kAlphaMean = 0.06;
constexpr double kOmegaMean = 0.12;
constexpr std::size_t kEstimationReplicas = 200;
// 2: standard-error study
constexpr double kBootAlpha1 = 0.02;
constexpr double kHessPhi = 0.01;
constexpr std::size_t kSeReplicas = 200;
constexpr std::size_t kSeBootstrap = 200;
// 3: level and power
constexpr std::size_t kPowerReplicas = 500;
constexpr double kLrtLevelLo = 0.03, kLrtLevelHi = 0.07;
constexpr double kScoreLevelLo = 0.02, kScoreLevelHi = 0.08;
constexpr double kPowerMin = 0.95;
// 4: analytic score
constexpr double kScoreRelErr = 1e-5;
constexpr int kScoreInstances = 20;
constexpr std::size_t kScoreLength = 200;
// 5: distribution
constexpr double kNormalization = 1e-8;
constexpr double kMarginal = 1e-10;
constexpr double kMomentSe = 4.0;
constexpr std::size_t kDraws = 1000000;
constexpr int kParamDraws = 10;
// 6: information identity
constexpr std::size_t kIdentityLength = 10000;
constexpr double kIdentitySe = 5.0;
// 7: Lambert W and extrema
constexpr double kLambertResidual = 1e-12;
constexpr double kExtremumSlope = 1e-6;
constexpr double kGridStep = 1e-3;
// 8: forecasting
constexpr int kModeDraws = 100;
constexpr std::size_t kRollingN = 216;
constexpr std::size_t kRollingN0 = 116;
}  // namespace tol

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v, int prec = 4) {
  std::ostringstream s;
  s.precision(prec);
  s << v;
  return s.str();
}

// Published means at n = 500, canonical parameter order.
constexpr std::array<double, 9> kTable1 = {0.287, 0.197, 0.297, 0.102, 0.202, 0.194, 1.044, 1.020, 0.100};

Outcome criterion1() {
  const int threads = default_threads();
  Scenario a = *preset_scenario("a");
  a.replicas = tol::kEstimationReplicas;
  a.n = 500;
  const EstimationStudy sa = run_estimation_study(a, threads);
  Scenario b = *preset_scenario("b");
  b.replicas = tol::kEstimationReplicas;
  b.n = 500;
  const EstimationStudy sb = run_estimation_study(b, threads);

  Outcome o{true, ""};
  std::ostringstream d;
  for (std::size_t i = 0; i < 9; ++i) {
    const auto& ps = sa.summary[i];
    const double lim = ps.name == "phi" ? tol::kPhiMean
                       : ps.name.rfind("beta", 0) == 0 ? tol::kBetaMean
                       : ps.name.rfind("alpha", 0) == 0 ? tol::kAlphaMean
                                                        : tol::kOmegaMean;
    const bool ok = std::abs(ps.mean - kTable1[i]) <= lim;
    o.pass &= ok;
    d << ps.name << "=" << fmt(ps.mean) << (ok ? "" : "(!)") << " ";
  }
  const double phi_b = sb.summary[8].mean;
  const bool ok_b = std::abs(phi_b + 0.100) <= tol::kPhiMean;
  o.pass &= ok_b;
  d << "| (b) phi=" << fmt(phi_b) << (ok_b ? "" : "(!)");
  d << " | failures " << sa.failures.size() << "+" << sb.failures.size();
  o.pass &= sa.estimates.size() >= tol::kEstimationReplicas * 9 / 10 && sb.estimates.size() >= tol::kEstimationReplicas * 9 / 10;
  o.detail = d.str();
  return o;
}

Outcome criterion2() {
  Scenario sc = *preset_scenario("se");
  sc.replicas = tol::kSeReplicas;
  sc.n = 500;
  const SeStudy st = run_se_study(sc, {SeMethod::outer, SeMethod::hessian, SeMethod::bootstrap}, tol::kSeBootstrap,
                                  default_threads());
  const auto idx = [&](const std::string& name) {
    return static_cast<std::size_t>(std::find(st.names.begin(), st.names.end(), name) - st.names.begin());
  };
  const std::size_t a1 = idx("alpha1"), phi = idx("phi");
  double boot_a1 = 0, hess_phi = 0, outer_phi = 0;
  std::size_t boot_n = 0, hess_n = 0;
  for (const auto& m : st.methods) {
    if (m.method == SeMethod::bootstrap) {
      boot_a1 = m.mean[a1];
      boot_n = m.count;
    }
    if (m.method == SeMethod::hessian) {
      hess_phi = m.mean[phi];
      hess_n = m.count;
    }
    if (m.method == SeMethod::outer) outer_phi = m.mean[phi];
  }
  const bool ok1 = std::abs(boot_a1 - 0.099) <= tol::kBootAlpha1;
  const bool ok2 = std::abs(hess_phi - 0.020) <= tol::kHessPhi;
  std::ostringstream d;
  d << "bootstrap SE(alpha1)=" << fmt(boot_a1) << " [0.099+-" << tol::kBootAlpha1 << "] over " << boot_n
    << "; D_n SE(phi)=" << fmt(hess_phi) << " [0.020+-" << tol::kHessPhi << "] over " << hess_n
    << "; S_n SE(phi)=" << fmt(outer_phi) << "; MC SD(alpha1)=" << fmt(st.mc_sd[a1])
    << " MC SD(phi)=" << fmt(st.mc_sd[phi]) << "; failed replicas " << st.failures.size();
  return {ok1 && ok2 && boot_n >= tol::kSeReplicas * 9 / 10, d.str()};
}

Outcome criterion3() {
  Scenario sc = *preset_scenario("scenario1");
  sc.replicas = tol::kPowerReplicas;
  sc.n = 500;
  const auto pts = run_power_study(sc, {0.0, -0.5, 0.5}, 0.05, true, true, default_threads());
  const auto& z = pts[0];
  const bool lrt_level = z.lrt_rate() >= tol::kLrtLevelLo && z.lrt_rate() <= tol::kLrtLevelHi;
  const bool score_level = z.score_rate() >= tol::kScoreLevelLo && z.score_rate() <= tol::kScoreLevelHi;
  const bool power = pts[1].lrt_rate() >= tol::kPowerMin && pts[2].lrt_rate() >= tol::kPowerMin;
  std::ostringstream d;
  d << "LRT level " << fmt(z.lrt_rate()) << " (" << z.lrt_valid << " valid); score level " << fmt(z.score_rate())
    << " (" << z.score_valid << " valid); LRT power at -0.5/+0.5 " << fmt(pts[1].lrt_rate()) << "/"
    << fmt(pts[2].lrt_rate()) << "; score power " << fmt(pts[1].score_rate()) << "/" << fmt(pts[2].score_rate());
  return {lrt_level && score_level && power, d.str()};
}

Outcome criterion4() {
  Rng rng(derive_seed(4, 0, 0));
  double worst = 0.0;
  for (int rep = 0; rep < tol::kScoreInstances; ++rep) {
    const bool diag = rep % 2 == 1;
    const ModelParams truth = random_params(rng, diag);
    const auto sim = simulate(truth, tol::kScoreLength, kDefaultBurnIn, std::nullopt,
                              derive_seed(4, 1, static_cast<std::uint64_t>(rep)));
    // evaluate away from the truth too, where the score is far from zero
    ModelParams p = random_params(rng, diag);
    const Vec2 init = sample_mean_init(sim.series);
    const ParamLayout layout = ParamLayout::full(diag);
    const Eigen::VectorXd g = score(p, sim.series, init, layout);
    const Eigen::VectorXd x = layout.pack(p);
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      const double h = 1e-6 * std::max(1.0, std::abs(x[i]));
      Eigen::VectorXd xp = x, xm = x;
      xp[i] += h;
      xm[i] -= h;
      const double fd = (log_likelihood(layout.unpack(xp, p), sim.series, init) -
                         log_likelihood(layout.unpack(xm, p), sim.series, init)) /
                        (2.0 * h);
      worst = std::max(worst, std::abs(g[i] - fd) / std::abs(fd));
    }
  }
  return {worst < tol::kScoreRelErr, "max relative error " + fmt(worst, 3) + " over " +
                                         std::to_string(tol::kScoreInstances) + " instances"};
}

Outcome criterion5() {
  Rng prng(derive_seed(5, 0, 0));
  double worst_norm = 0.0, worst_marginal = 0.0, worst_z = 0.0;
  for (int k = 0; k < tol::kParamDraws; ++k) {
    const BcpParams p{0.5 + 4.5 * prng.uniform(), 0.5 + 4.5 * prng.uniform(), -0.8 + 1.6 * prng.uniform()};
    double total = 0.0;
    for (std::int64_t x = 0;; ++x) {
      const double px = std::exp(poisson_log_pmf(x, p.lambda1));
      if (x > p.lambda1 && px < 1e-16) break;
      const double cm = mu2(p) * std::exp(p.phi * static_cast<double>(x));
      // Poisson(cm) mass outside cm +- (40 sd + 60) is far below double precision
      const double halfwidth = 40.0 * std::sqrt(cm) + 60.0;
      const auto ymin = static_cast<std::int64_t>(std::max(0.0, cm - halfwidth));
      const auto ymax = static_cast<std::int64_t>(cm + halfwidth);
      double row = 0.0;
      for (std::int64_t y = ymin; y <= ymax; ++y) row += std::exp(log_pmf(x, y, p));
      worst_marginal = std::max(worst_marginal, std::abs(row - px));
      total += row;
    }
    worst_norm = std::max(worst_norm, 1.0 - total);

    Rng rng(derive_seed(5, 1, static_cast<std::uint64_t>(k)));
    const std::size_t n = tol::kDraws;
    std::vector<double> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto [z1, z2] = sample(p, rng);
      a[i] = static_cast<double>(z1);
      b[i] = static_cast<double>(z2);
    }
    double m1 = 0, m2 = 0;
    for (std::size_t i = 0; i < n; ++i) {
      m1 += a[i];
      m2 += b[i];
    }
    m1 /= n;
    m2 /= n;
    double v1 = 0, v2 = 0, c = 0;
    for (std::size_t i = 0; i < n; ++i) {
      v1 += (a[i] - m1) * (a[i] - m1);
      v2 += (b[i] - m2) * (b[i] - m2);
      c += (a[i] - m1) * (b[i] - m2);
    }
    v1 /= n - 1;
    v2 /= n - 1;
    c /= n - 1;
    const double r = c / std::sqrt(v1 * v2);
    // standard errors from the sample influence functions
    double s_v2 = 0, s_c = 0, s_r = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double d1 = a[i] - m1, d2 = b[i] - m2;
      s_v2 += std::pow(d2 * d2 - v2, 2);
      s_c += std::pow(d1 * d2 - c, 2);
      const double u = d1 / std::sqrt(v1), w = d2 / std::sqrt(v2);
      s_r += std::pow(u * w - 0.5 * r * (u * u + w * w), 2);
    }
    const double dn = static_cast<double>(n);
    const double se_m1 = std::sqrt(v1 / dn), se_m2 = std::sqrt(v2 / dn);
    const double se_v2 = std::sqrt(s_v2 / (dn - 1) / dn), se_c = std::sqrt(s_c / (dn - 1) / dn),
                 se_r = std::sqrt(s_r / (dn - 1) / dn);
    worst_z = std::max({worst_z, std::abs(m1 - p.lambda1) / se_m1, std::abs(m2 - p.lambda2) / se_m2,
                        std::abs(v2 - variance_z2(p)) / se_v2, std::abs(c - covariance(p)) / se_c,
                        std::abs(r - correlation(p)) / se_r});
  }
  std::ostringstream d;
  d << "normalization deficit " << fmt(worst_norm, 3) << "; marginal error " << fmt(worst_marginal, 3)
    << "; worst moment z " << fmt(worst_z, 3);
  return {worst_norm <= tol::kNormalization && worst_marginal <= tol::kMarginal && worst_z <= tol::kMomentSe,
          d.str()};
}

Outcome criterion6() {
  const Scenario sc = *preset_scenario("a");
  const auto sim = simulate(sc.truth, tol::kIdentityLength, kDefaultBurnIn, std::nullopt, derive_seed(6, 0, 0));
  const Vec2 init{sim.lambda.lam1[0], sim.lambda.lam2[0]};
  const ParamLayout layout = ParamLayout::full(false);
  const Eigen::MatrixXd U = observation_scores(sc.truth, sim.series, init, layout);
  const auto H = observation_hessians(sc.truth, sim.series, init, layout);
  const Eigen::MatrixXd S = info_outer(sc.truth, sim.series, init, layout);
  const HessianInfo D = info_hessian(sc.truth, sim.series, init, layout);
  const auto k = static_cast<Eigen::Index>(layout.size());
  const auto n = static_cast<double>(H.size());
  double worst = 0.0, consistency = 0.0;
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = i; j < k; ++j) {
      double mean = 0.0;
      std::vector<double> d(H.size());
      for (std::size_t t = 0; t < H.size(); ++t) {
        const auto tt = static_cast<Eigen::Index>(t);
        d[t] = U(tt, i) * U(tt, j) + H[t](i, j);
        mean += d[t];
      }
      mean /= n;
      double ss = 0.0;
      for (double v : d) ss += (v - mean) * (v - mean);
      const double se = std::sqrt(ss / (n - 1) / n);
      worst = std::max(worst, std::abs(mean) / se);
      consistency = std::max(consistency, std::abs((S(i, j) - D.matrix(i, j)) - mean));
    }
  }
  std::ostringstream d;
  d << "worst |S_n - D_n| / MC SE " << fmt(worst, 3) << " over " << k * (k + 1) / 2
    << " entries; matrix vs per-t difference " << fmt(consistency, 3);
  return {worst <= tol::kIdentitySe && consistency < 1e-8, d.str()};
}

Outcome criterion7() {
  const double e_inv = std::exp(-1.0);
  double worst_res = 0.0;
  for (int i = 0; i <= 100000; ++i) {
    const double u = i / 100000.0;
    const double x0 = -e_inv + (e_inv + 1e4) * u * u * u;
    worst_res = std::max(worst_res, std::abs(lambert_w(WBranch::principal, x0) * std::exp(lambert_w(WBranch::principal, x0)) - x0) /
                                        std::max(1.0, std::abs(x0)));
    const double x1 = -e_inv * (1.0 - u * u);
    if (x1 < 0.0) {
      const double w = lambert_w(WBranch::lower, x1);
      worst_res = std::max(worst_res, std::abs(w * std::exp(w) - x1) / std::max(1.0, std::abs(x1)));
    }
  }

  Rng rng(derive_seed(7, 0, 0));
  std::vector<std::pair<double, double>> means{{1, 0.5}, {2, 3}, {5, 0.2}, {0.3, 8}, {10, 10}, {4, 1}};
  for (int i = 0; i < 14; ++i) means.emplace_back(0.2 + 8 * rng.uniform(), 0.2 + 8 * rng.uniform());
  double worst_slope = 0.0, worst_gap = 0.0;
  int minima = 0;
  for (const auto& [l1, l2] : means) {
    const auto ex = correlation_extrema(l1, l2);
    double best_max = -2.0, best_min = 2.0;
    bool has_min = false;
    for (const auto& pt : ex.points) {
      const double h = 1e-5;
      const double slope =
          (correlation({l1, l2, pt.phi + h}) - correlation({l1, l2, pt.phi - h})) / (2.0 * h);
      worst_slope = std::max(worst_slope, std::abs(slope));
      if (pt.maximum) best_max = std::max(best_max, pt.corr);
      else {
        best_min = std::min(best_min, pt.corr);
        has_min = true;
      }
    }
    minima += has_min;
    double grid_max = -2.0, grid_min = 2.0, grid_min_phi = 0.0;
    for (long i = 0; i <= 20000; ++i) {
      const double phi = -10.0 + static_cast<double>(i) * tol::kGridStep;
      const double c = correlation({l1, l2, phi});
      grid_max = std::max(grid_max, c);
      if (c < grid_min) {
        grid_min = c;
        grid_min_phi = phi;
      }
    }
    worst_gap = std::max(worst_gap, grid_max - best_max);
    if (has_min) {
      worst_gap = std::max(worst_gap, best_min - grid_min);
    } else if (grid_min_phi > -10.0 + 0.5) {
      // no interior minimum was reported, so the grid minimum must sit at the left edge
      worst_gap = std::max(worst_gap, 1.0);
    }
  }
  std::ostringstream d;
  d << "worst residual " << fmt(worst_res, 3) << "; worst |dcorr/dphi| " << fmt(worst_slope, 3)
    << "; grid excess over extrema " << fmt(worst_gap, 3) << "; " << means.size() << " mean pairs, " << minima
    << " with interior minimum";
  return {worst_res <= tol::kLambertResidual && worst_slope < tol::kExtremumSlope && worst_gap <= 1e-12, d.str()};
}

Outcome criterion8() {
  Rng rng(derive_seed(8, 0, 0));
  int mode_ok = 0;
  for (int k = 0; k < tol::kModeDraws; ++k) {
    const BcpParams p{0.1 + 15 * rng.uniform(), 0.1 + 15 * rng.uniform(), -0.8 + 1.6 * rng.uniform()};
    CountPair best{0, 0};
    double bv = -std::numeric_limits<double>::infinity();
    for (std::int64_t x = 0; x <= 300; ++x)
      for (std::int64_t y = 0; y <= 300; ++y) {
        const double v = log_pmf(x, y, p);
        if (v > bv) {
          bv = v;
          best = {x, y};
        }
      }
    mode_ok += joint_mode(p) == best;
  }

  const auto sim = simulate(preset_scenario("a")->truth, tol::kRollingN, kDefaultBurnIn, std::nullopt, derive_seed(8, 1, 0));
  const RollingEval ev = rolling_eval(sim.series, tol::kRollingN0, FitConfig{});
  const bool rolling_ok = ev.complete && ev.records.size() == 100 && ev.joint[0].rmsfe.back() == ev.joint[0].rmse &&
                          ev.joint[1].rmsfe.back() == ev.joint[1].rmse;

  const auto hi = simulate(preset_scenario("se")->truth, tol::kRollingN, kDefaultBurnIn, std::nullopt, derive_seed(8, 2, 0));
  FitConfig diag;
  diag.b_diagonal = true;
  RollingOptions ro;
  ro.conditional_on_first = true;
  const RollingEval cev = rolling_eval(hi.series, tol::kRollingN0, diag, ro);
  const bool cond_ok = cev.complete && cev.records.size() == 100 && cev.conditional && cev.conditional->mae <= cev.joint[1].mae;

  std::ostringstream d;
  d << "joint mode matches brute force " << mode_ok << "/" << tol::kModeDraws << "; rolling records "
    << ev.records.size() << " final RMSFE " << fmt(ev.joint[0].rmsfe.back()) << "/" << fmt(ev.joint[1].rmsfe.back())
    << " RMSE " << fmt(ev.joint[0].rmse) << "/" << fmt(ev.joint[1].rmse) << "; conditional MAE "
    << (cev.conditional ? fmt(cev.conditional->mae) : "n/a") << " vs joint MAE " << fmt(cev.joint[1].mae);
  return {mode_ok == tol::kModeDraws && rolling_ok && cond_ok, d.str()};
}

int run(const std::string& cmd) {
  const int rc = std::system((cmd + " > /dev/null 2>&1").c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

json read_json(const fs::path& p) {
  std::ifstream in(p);
  return json::parse(in);
}

Outcome criterion9() {
  const std::string cli = BCP_CLI_PATH;
  const fs::path dir = fs::temp_directory_path() / "bcp_acceptance_pipeline";
  fs::remove_all(dir);
  fs::create_directories(dir);
  std::vector<std::string> problems;
  auto expect = [&](bool ok, const std::string& what) {
    if (!ok) problems.push_back(what);
  };

  // synthetic monthly data shaped like a two-city notification table, with the more
  // dispersed series placed first so that automatic assignment has to swap it
  expect(run(cli + " simulate --theta se --n 216 --seed 2024 --out " + (dir / "sim").string()) == 0, "simulate");
  std::ifstream sim_csv(dir / "sim" / "series.csv");
  std::ofstream data(dir / "cases.csv");
  data << "month;city_b;city_a\n";
  std::string line;
  std::getline(sim_csv, line);
  int row = 0;
  while (std::getline(sim_csv, line)) {
    std::stringstream ss(line);
    std::string t, y1, y2;
    std::getline(ss, t, ',');
    std::getline(ss, y1, ',');
    std::getline(ss, y2, ',');
    char month[16];
    std::snprintf(month, sizeof month, "%04d-%02d", 2000 + row / 12, row % 12 + 1);
    data << month << ";" << y2 << ";" << y1 << "\n";
    ++row;
  }
  data.close();
  expect(row == 216, "216 rows");
  const std::string in = " --input " + (dir / "cases.csv").string() + " --delimiter ';'";

  expect(run(cli + " fit" + in + " --both --b-diagonal --format csv --out " + (dir / "fit").string()) == 0, "fit");
  if (fs::exists(dir / "fit" / "fit.json")) {
    const json f = read_json(dir / "fit" / "fit.json");
    expect(f["schema_version"] == kSchemaVersion, "fit schema_version");
    expect(f["fits"].size() == 2 && f["ranking"]["by_aic"].size() == 2, "fit --both ranking");
    expect(f["data"]["component2"] == "city_b", "dispersion assignment");
    expect(fs::exists(dir / "fit" / "corr_path.csv") && fs::exists(dir / "fit" / "estimates.csv"), "fit files");
  } else {
    expect(false, "fit.json");
  }

  expect(run(cli + " se" + in + " --b-diagonal --se-method hessian --out " + (dir / "se_h").string()) == 0, "se hessian");
  expect(run(cli + " se" + in + " --b-diagonal --se-method bootstrap --bootstrap-B 100 --seed 7 --out " +
             (dir / "se_b").string()) == 0,
         "se bootstrap");
  expect(run(cli + " se" + in + " --b-diagonal --se-method bootstrap --out " + (dir / "se_x").string()) == 2,
         "bootstrap without seed exits 2");

  expect(run(cli + " test" + in + " --b-diagonal --out " + (dir / "test").string()) == 0, "test");
  if (fs::exists(dir / "test" / "test.json")) {
    const json t = read_json(dir / "test" / "test.json");
    bool both_reject = t["tests"].size() == 2;
    for (const auto& x : t["tests"]) both_reject &= x["p_value"].get<double>() < 1e-6;
    expect(both_reject, "both tests reject phi = 0");
  } else {
    expect(false, "test.json");
  }

  expect(run(cli + " forecast" + in + " --b-diagonal --n0 116 --conditional --out " + (dir / "fc").string()) == 0,
         "rolling forecast");
  if (fs::exists(dir / "fc" / "forecast.json")) {
    const json fc = read_json(dir / "fc" / "forecast.json");
    expect(fc["records"].size() == 100, "100 forecast records");
    expect(fc["metrics"]["y1"]["rmsfe"].back() == fc["metrics"]["y1"]["rmse"], "final RMSFE equals RMSE");
    expect(fc["metrics"].contains("y2_conditional"), "conditional metrics");
  } else {
    expect(false, "forecast.json");
  }
  expect(run(cli + " forecast" + in + " --model " + (dir / "fit" / "fit.json").string() + " --out " +
             (dir / "fc1").string()) == 0,
         "one-step forecast from fit.json");

  std::ofstream(dir / "empty.csv").close();
  expect(run(cli + " fit --input " + (dir / "empty.csv").string() + " --out " + (dir / "bad").string()) == 2,
         "empty input exits 2");
  expect(run(cli + " fit") == 2, "missing --input exits 2");

  std::string detail = "pipeline simulate -> fit --both -> se -> test -> forecast on n=216";
  if (problems.empty()) return {true, detail};
  detail += "; failed:";
  for (const auto& p : problems) detail += " [" + p + "]";
  return {false, detail};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"estimation means, configurations (a) and (b)", criterion1},
      {"standard errors at the SE design", criterion2},
      {"LRT and score test level and power", criterion3},
      {"analytic score vs central differences", criterion4},
      {"BCP distribution normalization, marginal, moments", criterion5},
      {"information matrix identity", criterion6},
      {"Lambert W residual and correlation extrema", criterion7},
      {"forecast machinery", criterion8},
      {"CLI end-to-end pipeline on synthetic n=216 data", criterion9},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += o.pass ? 0 : 1;
    std::cout << "criterion " << (i + 1) << " " << (o.pass ? "PASS" : "FAIL") << ": " << criteria[i].first << ": "
              << o.detail << " (" << fmt(secs, 3) << " s)" << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
