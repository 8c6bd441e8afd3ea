#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "bcp/dataset.hpp"
#include "bcp/estimation.hpp"
#include "bcp/inference.hpp"
#include "bcp/json_io.hpp"
#include "bcp/montecarlo.hpp"

namespace bcp {

enum class OutputFormat { json, csv };

OutputFormat output_format_from_string(const std::string& s);

/// Settings shared by every subcommand.
struct RunConfig {
  std::optional<std::uint64_t> seed;
  std::size_t replicas = 200;
  std::size_t burn_in = kDefaultBurnIn;
  FitConfig fit;
  OutputFormat format = OutputFormat::json;
  std::filesystem::path out_dir = ".";
  int threads = 1;

  /// The seed, or a DataError naming the subcommand that needs one.
  std::uint64_t require_seed(const std::string& command) const;
};

/// Files written by a subcommand plus a short machine-readable digest.
struct CommandOutput {
  std::vector<std::filesystem::path> files;
  json digest;
};

/// Parameters from "a", "b", "scenario1", "se", or a comma list of 7 (diagonal B:
/// alpha1, alpha2, beta11, beta22, omega1, omega2, phi) or 9 values in canonical order.
ModelParams parse_theta(const std::string& text);

/// Parameters from a fit document ("model" entry) or a bare parameter object.
ModelParams load_params(const std::filesystem::path& path);

CommandOutput cmd_simulate(const RunConfig& cfg, const ModelParams& theta, std::size_t n);

struct FitCommandOptions {
  bool both = false;  // fit diagonal and full B and rank them
  std::optional<SeMethod> se_method;
  std::size_t bootstrap_replicas = kDefaultBootstrapReplicas;
};

CommandOutput cmd_fit(const RunConfig& cfg, const Dataset& data, const FitCommandOptions& opt);
CommandOutput cmd_se(const RunConfig& cfg, const Dataset& data, SeMethod method, std::size_t bootstrap_replicas);
CommandOutput cmd_test(const RunConfig& cfg, const Dataset& data);

struct ForecastCommandOptions {
  std::optional<std::size_t> n0;  // rolling origin; required unless a model file is given
  bool conditional = false;
  std::optional<std::filesystem::path> model;  // one-step forecast from a saved fit
  std::optional<Count> y1_next;                // observed next Y1 for a conditional one-step forecast
};

CommandOutput cmd_forecast(const RunConfig& cfg, const Dataset& data, const ForecastCommandOptions& opt);

enum class StudyKind { estimation, se, power };

StudyKind study_kind_from_string(const std::string& s);

struct MonteCarloOptions {
  StudyKind study = StudyKind::estimation;
  std::vector<SeMethod> se_methods{SeMethod::outer, SeMethod::hessian, SeMethod::bootstrap};
  std::size_t bootstrap_replicas = kDefaultBootstrapReplicas;
  std::vector<double> phi_grid;  // default -1..1 step 0.1
  double level = 0.05;
};

CommandOutput cmd_montecarlo(const RunConfig& cfg, const Scenario& scenario, const MonteCarloOptions& opt);

/// -1, -0.9, ..., 1.
std::vector<double> default_phi_grid();

}  // namespace bcp
