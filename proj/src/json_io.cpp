#include "bcp/json_io.hpp"

#include "bcp/error.hpp"

namespace bcp {

json to_json(const ModelParams& p) {
  json j;
  j["alpha1"] = p.a(0, 0);
  j["alpha2"] = p.a(1, 1);
  if (!p.a.is_diagonal()) {
    j["alpha12"] = p.a(0, 1);
    j["alpha21"] = p.a(1, 0);
  }
  j["beta11"] = p.b(0, 0);
  j["beta12"] = p.b(0, 1);
  j["beta21"] = p.b(1, 0);
  j["beta22"] = p.b(1, 1);
  j["omega1"] = p.omega[0];
  j["omega2"] = p.omega[1];
  j["phi"] = p.phi;
  j["b_diagonal"] = p.b_diagonal;
  return j;
}

ModelParams params_from_json(const json& j) {
  try {
    ModelParams p;
    p.a = Mat2{{j.at("alpha1").get<double>(), j.value("alpha12", 0.0), j.value("alpha21", 0.0),
                j.at("alpha2").get<double>()}};
    p.b = Mat2{{j.at("beta11").get<double>(), j.value("beta12", 0.0), j.value("beta21", 0.0),
                j.at("beta22").get<double>()}};
    p.omega = {j.at("omega1").get<double>(), j.at("omega2").get<double>()};
    p.phi = j.at("phi").get<double>();
    p.b_diagonal = j.value("b_diagonal", p.b.is_diagonal());
    p.validate();
    return p;
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed model parameters: ") + e.what());
  }
}

json to_json(const FitResult& f) {
  json j;
  j["params"] = to_json(f.theta);
  j["free_parameters"] = f.layout.names();
  j["loglik"] = f.loglik;
  j["aic"] = f.aic;
  j["bic"] = f.bic;
  j["k"] = f.k;
  j["n_used"] = f.n_used;
  j["converged"] = f.converged;
  j["gradient_norm"] = f.gradient_norm;
  j["starts_converged"] = f.starts_converged;
  j["iterations"] = f.iterations;
  j["stationarity_margin"] = f.stationarity_margin;
  j["lambda_init"] = {f.lambda_init[0], f.lambda_init[1]};
  return j;
}

json to_json(const SeResult& se) {
  json j;
  j["method"] = to_string(se.method);
  json entries = json::object();
  for (std::size_t i = 0; i < se.names.size(); ++i) entries[se.names[i]] = se.se[static_cast<Eigen::Index>(i)];
  j["se"] = entries;
  if (se.method == SeMethod::bootstrap) {
    j["replicas_requested"] = se.replicas_requested;
    j["replicas_dropped"] = se.replicas_dropped;
    j["replicas_used"] = se.replicates.rows();
  }
  return j;
}

json to_json(const TestResult& t) {
  json j;
  j["test"] = t.name;
  j["statistic"] = t.statistic;
  j["df"] = t.df;
  j["reference"] = "chi2_1";
  j["p_value"] = t.p_value;
  j["null_loglik"] = t.null_fit.loglik;
  if (t.alt_fit) j["alt_loglik"] = t.alt_fit->loglik;
  j["alt_refit_from_null"] = t.refit;
  return j;
}

json to_json(const ForecastRecord& r) {
  json j;
  j["t"] = r.t;
  j["lambda_next"] = {r.lambda_next[0], r.lambda_next[1]};
  j["point_joint"] = {r.point_joint.first, r.point_joint.second};
  if (r.point_conditional) j["point_conditional"] = *r.point_conditional;
  if (r.actual) j["actual"] = {r.actual->first, r.actual->second};
  return j;
}

json to_json(const ErrorMetrics& m) {
  json j;
  j["rmse"] = m.rmse;
  j["mae"] = m.mae;
  j["rmsfe"] = m.rmsfe;
  return j;
}

json to_json(const ParamSummary& s) {
  json j;
  j["parameter"] = s.name;
  j["truth"] = s.truth;
  j["mean"] = s.mean;
  j["sd"] = s.sd;
  j["mse"] = s.mse;
  j["count"] = s.count;
  return j;
}

}  // namespace bcp
