#include <CLI11.hpp>

#include <iostream>
#include <sstream>
#include <string>

#include "bcp/commands.hpp"
#include "bcp/error.hpp"
#include "bcp/parallel.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

struct Flags {
  std::string input;
  std::optional<std::uint64_t> seed;
  std::size_t replicas = 200;
  std::size_t burn_in = bcp::kDefaultBurnIn;
  bool b_diagonal = false;
  bool b_full = false;
  std::string se_method = "hessian";
  std::size_t bootstrap_b = bcp::kDefaultBootstrapReplicas;
  std::optional<std::size_t> n0;
  bool conditional = false;
  std::string assign = "auto";
  std::string out = ".";
  std::string format = "json";
  std::string delimiter = ",";
  std::size_t n = 500;
  std::string theta;
  std::string preset;
  std::string model;
  bool both = false;
  bool with_se = false;
  std::string phi_grid;
  std::string study = "estimation";
  std::string se_methods = "outer,hessian,bootstrap";
  std::optional<bcp::Count> y1_next;
  double level = 0.05;
};

bcp::Dataset load_dataset(const Flags& f) {
  if (f.input.empty()) throw bcp::DataError("--input is required");
  if (f.delimiter.size() != 1) throw bcp::DataError("--delimiter must be a single character");
  bcp::IngestOptions opt;
  opt.delimiter = f.delimiter[0];
  opt.assign = bcp::assignment_from_string(f.assign);
  bcp::Dataset d = bcp::ingest(f.input, opt);
  std::cerr << "bcp: " << d.assignment_note << "\n";
  return d;
}

bcp::RunConfig run_config(const Flags& f) {
  bcp::RunConfig cfg;
  cfg.seed = f.seed;
  cfg.replicas = f.replicas;
  cfg.burn_in = f.burn_in;
  cfg.fit.b_diagonal = f.b_diagonal;
  cfg.format = bcp::output_format_from_string(f.format);
  cfg.out_dir = f.out;
  cfg.threads = bcp::default_threads();
  return cfg;
}

std::vector<bcp::SeMethod> parse_methods(const std::string& text) {
  std::vector<bcp::SeMethod> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(bcp::se_method_from_string(item));
  return out;
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw bcp::DataError("--phi-grid: not a number: '" + item + "'");
    }
  }
  return out;
}

void report(const bcp::CommandOutput& out) {
  for (const auto& p : out.files) std::cout << p.string() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bivariate conditional Poisson INGARCH models: simulate, fit, test, forecast"};
  app.require_subcommand(1);
  Flags f;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", f.out, "Output directory")->capture_default_str();
    sub->add_option("--format", f.format, "Extra tabular output: json or csv")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    sub->add_option("--burn-in", f.burn_in, "Discarded initial simulation steps")->capture_default_str();
    sub->add_option("--seed", f.seed, "Master seed for stochastic steps");
  };
  auto add_data = [&](CLI::App* sub) {
    sub->add_option("--input", f.input, "CSV with two count columns (optional header and leading date column)")
        ->required();
    sub->add_option("--delimiter", f.delimiter, "CSV delimiter")->capture_default_str();
    sub->add_option("--assign", f.assign, "Component assignment: auto (by dispersion index), keep, swap")
        ->check(CLI::IsMember({"auto", "keep", "swap"}))
        ->capture_default_str();
  };
  auto add_structure = [&](CLI::App* sub) {
    auto* d = sub->add_flag("--b-diagonal", f.b_diagonal, "Diagonal B matrix");
    auto* full = sub->add_flag("--b-full", f.b_full, "Full B matrix (default)");
    d->excludes(full);
  };

  auto* sim = app.add_subcommand("simulate", "Simulate a bivariate count series");
  add_common(sim);
  sim->add_option("--n", f.n, "Series length")->capture_default_str();
  auto* theta_opt = sim->add_option(
      "--theta", f.theta,
      "Preset name or comma list: alpha1,alpha2,beta11,beta22,omega1,omega2,phi (diagonal) or "
      "alpha1,alpha2,beta11,beta12,beta21,beta22,omega1,omega2,phi");
  auto* model_opt = sim->add_option("--model", f.model, "Parameters from a fit.json");
  theta_opt->excludes(model_opt);

  auto* fit = app.add_subcommand("fit", "Conditional maximum likelihood fit");
  add_common(fit);
  add_data(fit);
  add_structure(fit);
  fit->add_flag("--both", f.both, "Fit diagonal and full B, rank by AIC and BIC");
  fit->add_flag("--se", f.with_se, "Also compute standard errors with --se-method");
  fit->add_option("--se-method", f.se_method, "outer, hessian, or bootstrap")
      ->check(CLI::IsMember({"outer", "hessian", "bootstrap"}))
      ->capture_default_str();
  fit->add_option("--bootstrap-B", f.bootstrap_b, "Bootstrap replicas")->capture_default_str();

  auto* se = app.add_subcommand("se", "Standard errors of the fitted parameters");
  add_common(se);
  add_data(se);
  add_structure(se);
  se->add_option("--se-method", f.se_method, "outer, hessian, or bootstrap")
      ->check(CLI::IsMember({"outer", "hessian", "bootstrap"}))
      ->capture_default_str();
  se->add_option("--bootstrap-B", f.bootstrap_b, "Bootstrap replicas")->capture_default_str();

  auto* test = app.add_subcommand("test", "Likelihood-ratio and score tests of phi = 0");
  add_common(test);
  add_data(test);
  add_structure(test);

  auto* fc = app.add_subcommand("forecast", "Rolling or one-step forecasts");
  add_common(fc);
  add_data(fc);
  add_structure(fc);
  fc->add_option("--n0", f.n0, "Rolling origin: first training length");
  fc->add_flag("--conditional", f.conditional, "Also predict Y2 given the realized Y1");
  fc->add_option("--model", f.model, "One-step forecast from a saved fit.json");
  fc->add_option("--y1-next", f.y1_next, "Observed next Y1 for a conditional one-step forecast");

  auto* mc = app.add_subcommand("montecarlo", "Monte Carlo studies");
  add_common(mc);
  mc->add_option("--preset", f.preset, "Design: a, b, scenario1, se")->required();
  mc->add_option("--replicas", f.replicas, "Monte Carlo replicas")->capture_default_str();
  mc->add_option("--n", f.n, "Series length")->capture_default_str();
  mc->add_option("--study", f.study, "estimation, se, or power")
      ->check(CLI::IsMember({"estimation", "se", "power"}))
      ->capture_default_str();
  mc->add_option("--se-methods", f.se_methods, "Comma list of SE methods for --study se")->capture_default_str();
  mc->add_option("--bootstrap-B", f.bootstrap_b, "Bootstrap replicas per SE replica")->capture_default_str();
  mc->add_option("--phi-grid", f.phi_grid, "Comma list of phi values for --study power (default -1..1 by 0.1)");
  mc->add_option("--level", f.level, "Test level for --study power")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  std::string command = "bcp";
  try {
    if (*sim) {
      command = "simulate";
      bcp::ModelParams theta;
      if (!f.model.empty()) {
        theta = bcp::load_params(f.model);
      } else if (!f.theta.empty()) {
        theta = bcp::parse_theta(f.theta);
      } else {
        throw bcp::DataError("simulate needs --theta or --model");
      }
      report(bcp::cmd_simulate(run_config(f), theta, f.n));
    } else if (*fit) {
      command = "fit";
      const auto data = load_dataset(f);
      bcp::FitCommandOptions opt;
      opt.both = f.both;
      if (f.with_se || fit->count("--se-method") > 0) opt.se_method = bcp::se_method_from_string(f.se_method);
      opt.bootstrap_replicas = f.bootstrap_b;
      report(bcp::cmd_fit(run_config(f), data, opt));
    } else if (*se) {
      command = "se";
      const auto data = load_dataset(f);
      report(bcp::cmd_se(run_config(f), data, bcp::se_method_from_string(f.se_method), f.bootstrap_b));
    } else if (*test) {
      command = "test";
      const auto data = load_dataset(f);
      const auto out = bcp::cmd_test(run_config(f), data);
      report(out);
      for (const auto& t : out.digest["tests"])
        std::cout << t["test"].get<std::string>() << " statistic " << t["statistic"].get<double>() << " p "
                  << t["p_value"].get<double>() << "\n";
    } else if (*fc) {
      command = "forecast";
      const auto data = load_dataset(f);
      bcp::ForecastCommandOptions opt;
      opt.n0 = f.n0;
      opt.conditional = f.conditional;
      if (!f.model.empty()) opt.model = f.model;
      opt.y1_next = f.y1_next;
      report(bcp::cmd_forecast(run_config(f), data, opt));
    } else if (*mc) {
      command = "montecarlo";
      auto sc = bcp::preset_scenario(f.preset);
      if (!sc) throw bcp::DataError("unknown preset '" + f.preset + "'");
      sc->n = f.n;
      bcp::MonteCarloOptions opt;
      opt.study = bcp::study_kind_from_string(f.study);
      opt.se_methods = parse_methods(f.se_methods);
      opt.bootstrap_replicas = f.bootstrap_b;
      if (!f.phi_grid.empty()) opt.phi_grid = parse_grid(f.phi_grid);
      opt.level = f.level;
      report(bcp::cmd_montecarlo(run_config(f), *sc, opt));
    }
  } catch (const bcp::NumericalError& e) {
    std::cerr << "bcp " << command << ": numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const bcp::DataError& e) {
    std::cerr << "bcp " << command << ": " << e.what() << "\n";
    return kExitUsage;
  } catch (const bcp::DomainError& e) {
    std::cerr << "bcp " << command << ": invalid argument: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "bcp " << command << ": " << e.what() << "\n";
    return kExitNumerical;
  }
  return 0;
}
