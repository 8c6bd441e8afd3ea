#include "bcp/commands.hpp"

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include "bcp/bcp_dist.hpp"
#include "bcp/error.hpp"
#include "bcp/forecast.hpp"
#include "bcp/likelihood.hpp"

namespace bcp {

namespace fs = std::filesystem;

namespace {

std::string num(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string num(std::int64_t v) { return std::to_string(v); }
std::string num(std::size_t v) { return std::to_string(v); }

class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header) { row(header); }

  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) text_ << ',';
      text_ << cells[i];
    }
    text_ << '\n';
  }

  std::string str() const { return text_.str(); }

 private:
  std::ostringstream text_;
};

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw DataError(dir.string() + ": " + ec.message());
}

fs::path write_file(const RunConfig& cfg, const std::string& name, const std::string& content) {
  ensure_dir(cfg.out_dir);
  const fs::path path = cfg.out_dir / name;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError(path.string() + ": " + std::strerror(errno));
  out << content;
  out.flush();
  if (!out) throw DataError(path.string() + ": write failed: " + std::strerror(errno));
  return path;
}

fs::path write_json(const RunConfig& cfg, const std::string& name, const json& doc) {
  return write_file(cfg, name, doc.dump(2) + "\n");
}

json header(const std::string& command) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  return j;
}

json dataset_json(const Dataset& d) {
  json j;
  j["source"] = d.source;
  j["n"] = d.series.size();
  j["columns"] = {d.column_names[0], d.column_names[1]};
  j["dispersion_index"] = {d.dispersion[0], d.dispersion[1]};
  j["component1"] = d.swapped ? d.column_names[1] : d.column_names[0];
  j["component2"] = d.swapped ? d.column_names[0] : d.column_names[1];
  j["assignment"] = d.assignment_note;
  return j;
}

std::string label_at(const SeriesPair& s, std::size_t t) { return s.labels.empty() ? num(t + 1) : s.labels[t]; }

std::string model_label(const FitResult& f) { return f.layout.b_diagonal() ? "diagonal" : "full"; }

// Conditional correlation along the fitted intensity path, with the competitor's bound.
std::string corr_path_csv(const FitResult& f, const SeriesPair& s) {
  const LambdaPath path = filter_lambda(f.theta, s, f.lambda_init);
  const PhiBound bound = competitor_phi_bound(f, s);
  CsvWriter csv({"t", "label", "lambda1", "lambda2", "corr", "competitor_max_corr"});
  for (std::size_t t = 0; t < path.size(); ++t) {
    const double c = correlation({path.lam1[t], path.lam2[t], f.theta.phi});
    csv.row({num(t + 1), label_at(s, t), num(path.lam1[t]), num(path.lam2[t]), num(c),
             num(bound.max_corr_path[t])});
  }
  return csv.str();
}

json fit_json(const FitResult& f, const SeriesPair& s) {
  json j = to_json(f);
  j["model"] = model_label(f);
  const PhiBound bound = competitor_phi_bound(f, s);
  j["competitor_phi_max"] = bound.phi_max;
  return j;
}

std::string estimates_csv(const std::vector<std::pair<FitResult, std::optional<SeResult>>>& fits) {
  CsvWriter csv({"model", "parameter", "estimate", "se", "se_method"});
  for (const auto& [f, se] : fits) {
    const auto names = f.layout.names();
    for (std::size_t i = 0; i < names.size(); ++i) {
      const double est = get_param(f.theta, f.layout[i]);
      csv.row({model_label(f), names[i], num(est), se ? num(se->se[static_cast<Eigen::Index>(i)]) : "",
               se ? to_string(se->method) : ""});
    }
  }
  return csv.str();
}

SeResult compute_se(const RunConfig& cfg, const FitResult& f, const SeriesPair& s, SeMethod method,
                    std::size_t bootstrap_replicas, const std::string& command) {
  if (method != SeMethod::bootstrap) return se_asymptotic(f, s, method);
  BootstrapOptions opt;
  opt.replicas = bootstrap_replicas;
  opt.seed = cfg.require_seed(command + " --se-method bootstrap");
  opt.burn_in = cfg.burn_in;
  opt.threads = cfg.threads;
  FitConfig fc = cfg.fit;
  fc.b_diagonal = f.layout.b_diagonal();
  return se_bootstrap(f, s, fc, opt);
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string cell;
  while (std::getline(in, cell, ',')) {
    const auto first = cell.find_first_not_of(" \t");
    const auto last = cell.find_last_not_of(" \t");
    if (first == std::string::npos) throw DataError("empty entry in list '" + text + "'");
    cell = cell.substr(first, last - first + 1);
    double v = 0.0;
    const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (res.ec != std::errc() || res.ptr != cell.data() + cell.size())
      throw DataError("not a number: '" + cell + "' in list '" + text + "'");
    out.push_back(v);
  }
  return out;
}

}  // namespace

OutputFormat output_format_from_string(const std::string& s) {
  if (s == "json") return OutputFormat::json;
  if (s == "csv") return OutputFormat::csv;
  throw DataError("unknown format '" + s + "' (expected json or csv)");
}

StudyKind study_kind_from_string(const std::string& s) {
  if (s == "estimation") return StudyKind::estimation;
  if (s == "se") return StudyKind::se;
  if (s == "power") return StudyKind::power;
  throw DataError("unknown study '" + s + "' (expected estimation, se, or power)");
}

std::uint64_t RunConfig::require_seed(const std::string& command) const {
  if (!seed) throw DataError(command + " is stochastic and needs --seed");
  return *seed;
}

std::vector<double> default_phi_grid() {
  std::vector<double> g;
  for (int i = -10; i <= 10; ++i) g.push_back(i / 10.0);
  return g;
}

ModelParams parse_theta(const std::string& text) {
  if (auto sc = preset_scenario(text)) return sc->truth;
  const std::vector<double> v = parse_list(text);
  ModelParams p;
  if (v.size() == 7) {
    p.a = Mat2::diag(v[0], v[1]);
    p.b = Mat2::diag(v[2], v[3]);
    p.b_diagonal = true;
    p.omega = {v[4], v[5]};
    p.phi = v[6];
  } else if (v.size() == 9) {
    p.a = Mat2::diag(v[0], v[1]);
    p.b = Mat2{{v[2], v[3], v[4], v[5]}};
    p.b_diagonal = false;
    p.omega = {v[6], v[7]};
    p.phi = v[8];
  } else {
    throw DataError("--theta needs a preset name or 7 (diagonal B) or 9 comma-separated values, got " +
                    std::to_string(v.size()));
  }
  p.validate();
  return p;
}

ModelParams load_params(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError(path.string() + ": " + std::strerror(errno));
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw DataError(path.string() + ": " + e.what());
  }
  if (j.contains("model") && j["model"].contains("params")) return params_from_json(j["model"]["params"]);
  if (j.contains("params")) return params_from_json(j["params"]);
  return params_from_json(j);
}

CommandOutput cmd_simulate(const RunConfig& cfg, const ModelParams& theta, std::size_t n) {
  theta.validate();
  if (n < 2) throw DataError("simulate: --n must be at least 2");
  const std::uint64_t seed = cfg.require_seed("simulate");
  const Simulation sim = simulate(theta, n, cfg.burn_in, std::nullopt, seed);
  const StationarityCheck st = stationarity_check(theta);

  CommandOutput out;
  CsvWriter series({"t", "y1", "y2"});
  CsvWriter lambda({"t", "lambda1", "lambda2"});
  for (std::size_t t = 0; t < n; ++t) {
    series.row({num(t + 1), num(sim.series.y1[t]), num(sim.series.y2[t])});
    lambda.row({num(t + 1), num(sim.lambda.lam1[t]), num(sim.lambda.lam2[t])});
  }
  out.files.push_back(write_file(cfg, "series.csv", series.str()));
  out.files.push_back(write_file(cfg, "lambda.csv", lambda.str()));

  json manifest = header("simulate");
  manifest["params"] = to_json(theta);
  manifest["n"] = n;
  manifest["burn_in"] = cfg.burn_in;
  manifest["seed"] = seed;
  manifest["stationarity_margin"] = st.margin;
  manifest["stationary"] = st.satisfied;
  manifest["warnings"] = sim.warnings;
  out.files.push_back(write_json(cfg, "manifest.json", manifest));
  out.digest = manifest;
  return out;
}

CommandOutput cmd_fit(const RunConfig& cfg, const Dataset& data, const FitCommandOptions& opt) {
  std::vector<bool> structures{cfg.fit.b_diagonal};
  if (opt.both) structures = {true, false};

  std::vector<std::pair<FitResult, std::optional<SeResult>>> fits;
  for (bool diag : structures) {
    FitConfig fc = cfg.fit;
    fc.b_diagonal = diag;
    FitResult f = fit(data.series, fc);
    std::optional<SeResult> se;
    if (opt.se_method) se = compute_se(cfg, f, data.series, *opt.se_method, opt.bootstrap_replicas, "fit");
    fits.emplace_back(std::move(f), std::move(se));
  }

  json doc = header("fit");
  doc["data"] = dataset_json(data);
  // the model matching the --b-diagonal/--b-full choice is the one later commands read
  std::size_t primary = 0;
  for (std::size_t i = 0; i < fits.size(); ++i)
    if (fits[i].first.layout.b_diagonal() == cfg.fit.b_diagonal) primary = i;
  doc["model"] = fit_json(fits[primary].first, data.series);
  if (fits[primary].second) doc["model"]["se"] = to_json(*fits[primary].second);
  if (opt.both) {
    json all = json::array();
    std::vector<FitResult> plain;
    for (const auto& [f, se] : fits) {
      json j = fit_json(f, data.series);
      if (se) j["se"] = to_json(*se);
      all.push_back(j);
      plain.push_back(f);
    }
    doc["fits"] = all;
    const ModelRanking rank = model_select(plain);
    json by_aic = json::array(), by_bic = json::array();
    for (std::size_t i : rank.by_aic) by_aic.push_back(model_label(plain[i]));
    for (std::size_t i : rank.by_bic) by_bic.push_back(model_label(plain[i]));
    doc["ranking"] = {{"by_aic", by_aic}, {"by_bic", by_bic}};
  }

  CommandOutput out;
  out.files.push_back(write_json(cfg, "fit.json", doc));
  out.files.push_back(write_file(cfg, "corr_path.csv", corr_path_csv(fits[primary].first, data.series)));
  if (cfg.format == OutputFormat::csv) out.files.push_back(write_file(cfg, "estimates.csv", estimates_csv(fits)));
  out.digest = doc;
  return out;
}

CommandOutput cmd_se(const RunConfig& cfg, const Dataset& data, SeMethod method, std::size_t bootstrap_replicas) {
  const FitResult f = fit(data.series, cfg.fit);
  const SeResult se = compute_se(cfg, f, data.series, method, bootstrap_replicas, "se");

  json doc = header("se");
  doc["data"] = dataset_json(data);
  doc["model"] = fit_json(f, data.series);
  doc["se"] = to_json(se);
  if (method == SeMethod::bootstrap) doc["seed"] = *cfg.seed;

  CommandOutput out;
  out.files.push_back(write_json(cfg, "se.json", doc));
  if (cfg.format == OutputFormat::csv) out.files.push_back(write_file(cfg, "se.csv", estimates_csv({{f, se}})));
  out.digest = doc;
  return out;
}

CommandOutput cmd_test(const RunConfig& cfg, const Dataset& data) {
  const PhiTests t = test_phi(data.series, cfg.fit, true, true);

  json doc = header("test");
  doc["data"] = dataset_json(data);
  doc["hypothesis"] = "phi = 0";
  doc["null_model"] = to_json(*t.null_fit);
  json tests = json::array();
  CsvWriter csv({"test", "statistic", "df", "p_value"});
  if (t.lrt) {
    doc["alt_model"] = fit_json(*t.lrt->alt_fit, data.series);
    tests.push_back(to_json(*t.lrt));
    csv.row({"lrt", num(t.lrt->statistic), num(static_cast<std::int64_t>(t.lrt->df)), num(t.lrt->p_value)});
  }
  if (t.score) {
    tests.push_back(to_json(*t.score));
    csv.row({"score", num(t.score->statistic), num(static_cast<std::int64_t>(t.score->df)), num(t.score->p_value)});
  }
  doc["tests"] = tests;
  json errors = json::object();
  if (!t.lrt_error.empty()) errors["lrt"] = t.lrt_error;
  if (!t.score_error.empty()) errors["score"] = t.score_error;
  doc["errors"] = errors;

  CommandOutput out;
  out.files.push_back(write_json(cfg, "test.json", doc));
  if (cfg.format == OutputFormat::csv) out.files.push_back(write_file(cfg, "test.csv", csv.str()));
  out.digest = doc;
  if (!t.lrt && !t.score) throw NumericalError("test: both tests failed: " + t.lrt_error + "; " + t.score_error);
  return out;
}

CommandOutput cmd_forecast(const RunConfig& cfg, const Dataset& data, const ForecastCommandOptions& opt) {
  CommandOutput out;
  if (opt.model) {
    std::ifstream in(*opt.model);
    if (!in) throw DataError(opt.model->string() + ": " + std::strerror(errno));
    json j;
    try {
      j = json::parse(in);
    } catch (const json::exception& e) {
      throw DataError(opt.model->string() + ": " + e.what());
    }
    const ModelParams theta = load_params(*opt.model);
    Vec2 init = sample_mean_init(data.series);
    if (j.contains("model") && j["model"].contains("lambda_init")) {
      init = {j["model"]["lambda_init"][0].get<double>(), j["model"]["lambda_init"][1].get<double>()};
    }
    ForecastRecord rec = one_step(theta, data.series, init);
    if (opt.y1_next) rec.point_conditional = conditional_one_step(theta, data.series, init, *opt.y1_next);
    json doc = header("forecast");
    doc["data"] = dataset_json(data);
    doc["params"] = to_json(theta);
    doc["lambda_init"] = {init[0], init[1]};
    doc["forecast"] = to_json(rec);
    if (opt.y1_next) doc["y1_next"] = *opt.y1_next;
    out.files.push_back(write_json(cfg, "forecast.json", doc));
    out.digest = doc;
    return out;
  }

  if (!opt.n0) throw DataError("forecast needs --n0 (rolling evaluation) or --model (one-step forecast)");
  RollingOptions ro;
  ro.conditional_on_first = opt.conditional;
  const RollingEval ev = rolling_eval(data.series, *opt.n0, cfg.fit, ro);

  json doc = header("forecast");
  doc["data"] = dataset_json(data);
  doc["n0"] = *opt.n0;
  doc["complete"] = ev.complete;
  if (ev.failed_at) {
    doc["failed_at"] = *ev.failed_at;
    doc["error"] = ev.error;
  }
  json records = json::array();
  for (const auto& r : ev.records) records.push_back(to_json(r));
  doc["records"] = records;
  doc["metrics"] = {{"y1", to_json(ev.joint[0])}, {"y2", to_json(ev.joint[1])}};
  if (ev.conditional) doc["metrics"]["y2_conditional"] = to_json(*ev.conditional);

  std::vector<std::string> rh{"t", "label", "actual_y1", "actual_y2", "pred_y1", "pred_y2"};
  if (opt.conditional) rh.push_back("pred_y2_conditional");
  CsvWriter rec_csv(rh);
  for (const auto& r : ev.records) {
    std::vector<std::string> row{num(r.t + 1), label_at(data.series, r.t), num(r.actual->first),
                                 num(r.actual->second), num(r.point_joint.first), num(r.point_joint.second)};
    if (opt.conditional) row.push_back(r.point_conditional ? num(*r.point_conditional) : "");
    rec_csv.row(row);
  }
  std::vector<std::string> mh{"step", "t", "rmsfe_y1", "rmsfe_y2"};
  if (ev.conditional) mh.push_back("rmsfe_y2_conditional");
  CsvWriter rmsfe(mh);
  for (std::size_t i = 0; i < ev.records.size(); ++i) {
    std::vector<std::string> row{num(i + 1), num(ev.records[i].t + 1), num(ev.joint[0].rmsfe[i]),
                                 num(ev.joint[1].rmsfe[i])};
    if (ev.conditional) row.push_back(num(ev.conditional->rmsfe[i]));
    rmsfe.row(row);
  }

  out.files.push_back(write_json(cfg, "forecast.json", doc));
  out.files.push_back(write_file(cfg, "rmsfe.csv", rmsfe.str()));
  out.files.push_back(write_file(cfg, "forecast_records.csv", rec_csv.str()));
  out.digest = doc;
  if (!ev.complete) {
    throw NumericalError("forecast: refit failed at t = " + std::to_string(*ev.failed_at + 1) + " (" + ev.error +
                         "); partial results written to " + cfg.out_dir.string());
  }
  return out;
}

CommandOutput cmd_montecarlo(const RunConfig& cfg, const Scenario& scenario, const MonteCarloOptions& opt) {
  Scenario sc = scenario;
  sc.seed = cfg.require_seed("montecarlo");
  sc.replicas = cfg.replicas;
  sc.burn_in = cfg.burn_in;
  if (sc.replicas < 1) throw DataError("montecarlo: --replicas must be positive");

  json doc = header("montecarlo");
  doc["scenario"] = sc.name;
  doc["truth"] = to_json(sc.truth);
  doc["n"] = sc.n;
  doc["replicas"] = sc.replicas;
  doc["burn_in"] = sc.burn_in;
  doc["seed"] = sc.seed;
  CommandOutput out;

  auto failures_json = [](const std::vector<ReplicaFailure>& f) {
    json arr = json::array();
    for (const auto& x : f) arr.push_back({{"replica", x.index}, {"error", x.message}});
    return arr;
  };

  if (opt.study == StudyKind::estimation) {
    const EstimationStudy st = run_estimation_study(sc, cfg.threads);
    std::vector<std::string> h{"replica"};
    h.insert(h.end(), st.names.begin(), st.names.end());
    h.push_back("loglik");
    CsvWriter est(h);
    for (std::size_t i = 0; i < st.estimates.size(); ++i) {
      std::vector<std::string> row{num(st.replica_index[i])};
      for (Eigen::Index j = 0; j < st.estimates[i].size(); ++j) row.push_back(num(st.estimates[i][j]));
      row.push_back(num(st.loglik[i]));
      est.row(row);
    }
    CsvWriter sum({"parameter", "mean", "sd", "mse"});
    json summary = json::array();
    for (const auto& p : st.summary) {
      sum.row({p.name, num(p.mean), num(p.sd), num(p.mse)});
      summary.push_back(to_json(p));
    }
    doc["study"] = "estimation";
    doc["replicas_used"] = st.estimates.size();
    doc["replicas_dropped"] = st.failures.size();
    doc["failures"] = failures_json(st.failures);
    doc["summary"] = summary;
    out.files.push_back(write_file(cfg, "estimates.csv", est.str()));
    out.files.push_back(write_file(cfg, "summary.csv", sum.str()));
  } else if (opt.study == StudyKind::se) {
    const SeStudy st = run_se_study(sc, opt.se_methods, opt.bootstrap_replicas, cfg.threads);
    CsvWriter sum({"parameter", "method", "mean", "sd", "median", "mc_sd", "count"});
    json methods = json::array();
    for (const auto& m : st.methods) {
      json mj{{"method", to_string(m.method)}, {"count", m.count}};
      json per = json::object();
      for (std::size_t j = 0; j < st.names.size(); ++j) {
        sum.row({st.names[j], to_string(m.method), num(m.mean[j]), num(m.sd[j]), num(m.median[j]), num(st.mc_sd[j]),
                 num(m.count)});
        per[st.names[j]] = {{"mean", m.mean[j]}, {"sd", m.sd[j]}, {"median", m.median[j]}};
      }
      mj["se"] = per;
      methods.push_back(mj);
    }
    json mc = json::object();
    for (std::size_t j = 0; j < st.names.size(); ++j) mc[st.names[j]] = st.mc_sd[j];
    CsvWriter reps({"replica", "method", "parameter", "estimate", "se"});
    for (const auto& r : st.replicas) {
      for (const auto& m : opt.se_methods) {
        const auto& se = m == SeMethod::outer ? r.se_outer : (m == SeMethod::hessian ? r.se_hessian : r.se_bootstrap);
        for (std::size_t j = 0; j < st.names.size(); ++j) {
          const auto jj = static_cast<Eigen::Index>(j);
          reps.row({num(r.index), to_string(m), st.names[j], num(r.estimate[jj]), se ? num((*se)[jj]) : ""});
        }
      }
    }
    doc["study"] = "se";
    doc["bootstrap_replicas"] = opt.bootstrap_replicas;
    doc["replicas_used"] = st.replicas.size();
    doc["replicas_dropped"] = st.failures.size();
    doc["failures"] = failures_json(st.failures);
    doc["mc_sd"] = mc;
    doc["methods"] = methods;
    out.files.push_back(write_file(cfg, "se_replicas.csv", reps.str()));
    out.files.push_back(write_file(cfg, "se_summary.csv", sum.str()));
  } else {
    const std::vector<double> grid = opt.phi_grid.empty() ? default_phi_grid() : opt.phi_grid;
    const auto pts = run_power_study(sc, grid, opt.level, true, true, cfg.threads);
    CsvWriter csv({"phi", "replicas", "lrt_valid", "lrt_reject", "lrt_rate", "score_valid", "score_reject",
                   "score_rate", "fit_failures"});
    json arr = json::array();
    for (const auto& p : pts) {
      csv.row({num(p.phi), num(p.replicas), num(p.lrt_valid), num(p.lrt_reject), num(p.lrt_rate()),
               num(p.score_valid), num(p.score_reject), num(p.score_rate()), num(p.fit_failures)});
      arr.push_back({{"phi", p.phi},
                     {"lrt_rate", p.lrt_rate()},
                     {"score_rate", p.score_rate()},
                     {"lrt_valid", p.lrt_valid},
                     {"score_valid", p.score_valid},
                     {"fit_failures", p.fit_failures}});
    }
    doc["study"] = "power";
    doc["level"] = opt.level;
    doc["points"] = arr;
    out.files.push_back(write_file(cfg, "power.csv", csv.str()));
  }
  out.files.push_back(write_json(cfg, "summary.json", doc));
  out.digest = doc;
  return out;
}

}  // namespace bcp
