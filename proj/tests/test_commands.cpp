#include <doctest.h>

#include <bcp/commands.hpp>
#include <bcp/error.hpp>
#include <bcp/likelihood.hpp>

#include <fstream>
#include <sstream>

#include "fixtures.hpp"

using namespace bcp;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("bcp_test_commands_" + name);
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

RunConfig config_in(const fs::path& dir, std::uint64_t seed = 5) {
  RunConfig cfg;
  cfg.seed = seed;
  cfg.out_dir = dir;
  return cfg;
}

}  // namespace

TEST_CASE("simulate writes identical bytes for identical inputs") {
  const auto d1 = scratch("sim1"), d2 = scratch("sim2");
  const auto o1 = cmd_simulate(config_in(d1), config_a(), 120);
  cmd_simulate(config_in(d2), config_a(), 120);
  for (const char* name : {"series.csv", "lambda.csv", "manifest.json"})
    CHECK(slurp(d1 / name) == slurp(d2 / name));
  CHECK(o1.digest["schema_version"] == kSchemaVersion);
  CHECK(o1.digest["stationarity_margin"].get<double>() == stationarity_check(config_a()).margin);
  CHECK(o1.digest["seed"].get<std::uint64_t>() == 5);

  RunConfig noseed = config_in(d1);
  noseed.seed.reset();
  CHECK_THROWS_AS(cmd_simulate(noseed, config_a(), 10), DataError);
}

TEST_CASE("simulate output ingests back unchanged") {
  const auto dir = scratch("roundtrip");
  cmd_simulate(config_in(dir), config_a(), 50);
  IngestOptions keep;
  keep.assign = Assignment::keep;
  const Dataset d = ingest((dir / "series.csv").string(), keep);
  const auto sim = simulate(config_a(), 50, kDefaultBurnIn, std::nullopt, 5);
  CHECK(d.series.y1 == sim.series.y1);
  CHECK(d.series.y2 == sim.series.y2);
  CHECK(d.series.labels.front() == "1");
}

TEST_CASE("fit writes parameters that forecast reads back exactly") {
  const auto dir = scratch("fit");
  const auto sim = simulate(config_a(), 300, 300, std::nullopt, 8);
  Dataset data;
  data.series = sim.series;
  data.source = "memory";
  data.column_names = {"y1", "y2"};
  RunConfig cfg = config_in(dir);
  cfg.format = OutputFormat::csv;
  FitCommandOptions opt;
  opt.both = true;
  opt.se_method = SeMethod::hessian;
  const auto out = cmd_fit(cfg, data, opt);
  CHECK(fs::exists(dir / "fit.json"));
  CHECK(fs::exists(dir / "corr_path.csv"));
  CHECK(fs::exists(dir / "estimates.csv"));
  CHECK(out.digest["fits"].size() == 2);
  CHECK(out.digest["ranking"]["by_aic"].size() == 2);
  CHECK(out.digest["fits"][0].contains("aic"));
  CHECK(out.digest["fits"][1].contains("bic"));
  CHECK(out.digest["model"]["model"] == "full");

  FitConfig fc;
  const FitResult direct = fit(sim.series, fc);
  const ModelParams back = load_params(dir / "fit.json");
  CHECK(back.b.v == direct.theta.b.v);
  CHECK(back.a.v == direct.theta.a.v);
  CHECK(back.omega == direct.theta.omega);
  CHECK(back.phi == direct.theta.phi);

  ForecastCommandOptions fopt;
  fopt.model = dir / "fit.json";
  const auto fo = cmd_forecast(cfg, data, fopt);
  const auto rec = one_step(direct, sim.series);
  CHECK(fo.digest["forecast"]["point_joint"][0].get<Count>() == rec.point_joint.first);
  CHECK(fo.digest["forecast"]["point_joint"][1].get<Count>() == rec.point_joint.second);

  // corr path has a header plus one row per observation
  std::ifstream in(dir / "corr_path.csv");
  std::string line;
  std::size_t lines = 0;
  while (std::getline(in, line)) ++lines;
  CHECK(lines == 301);
}

TEST_CASE("test command reports both tests") {
  const auto dir = scratch("test");
  const auto sim = simulate(se_design(0.7), 500, 300, std::nullopt, 9);
  Dataset data;
  data.series = sim.series;
  RunConfig cfg = config_in(dir);
  cfg.fit.b_diagonal = true;
  const auto out = cmd_test(cfg, data);
  REQUIRE(out.digest["tests"].size() == 2);
  for (const auto& t : out.digest["tests"]) CHECK(t["p_value"].get<double>() < 1e-6);
}

TEST_CASE("rolling forecast command files") {
  const auto dir = scratch("forecast");
  const auto sim = simulate(se_design(), 140, 300, std::nullopt, 10);
  Dataset data;
  data.series = sim.series;
  RunConfig cfg = config_in(dir);
  cfg.fit.b_diagonal = true;
  ForecastCommandOptions opt;
  opt.n0 = 120;
  opt.conditional = true;
  const auto out = cmd_forecast(cfg, data, opt);
  CHECK(out.digest["records"].size() == 20);
  CHECK(out.digest["metrics"]["y1"]["rmsfe"].back().get<double>() ==
        out.digest["metrics"]["y1"]["rmse"].get<double>());
  CHECK(fs::exists(dir / "rmsfe.csv"));
  CHECK_THROWS_AS(cmd_forecast(cfg, data, ForecastCommandOptions{}), DataError);
}

TEST_CASE("montecarlo command") {
  const auto dir = scratch("mc");
  RunConfig cfg = config_in(dir);
  cfg.replicas = 3;
  Scenario sc = *preset_scenario("a");
  sc.n = 200;
  const auto out = cmd_montecarlo(cfg, sc, MonteCarloOptions{});
  const std::string summary = slurp(dir / "summary.csv");
  CHECK(summary.rfind("parameter,mean,sd,mse\n", 0) == 0);
  CHECK(out.digest["replicas_used"].get<std::size_t>() + out.digest["replicas_dropped"].get<std::size_t>() == 3);

  MonteCarloOptions power;
  power.study = StudyKind::power;
  power.phi_grid = {0.0, 0.5};
  Scenario s1 = *preset_scenario("scenario1");
  s1.n = 200;
  cmd_montecarlo(cfg, s1, power);
  CHECK(fs::exists(dir / "power.csv"));
  CHECK(default_phi_grid().size() == 21);
}

TEST_CASE("theta parsing") {
  const ModelParams d = parse_theta("0.4,0.3,0.2,0.4,1,0.5,0.7");
  CHECK(d.b_diagonal);
  CHECK(d.omega[1] == 0.5);
  const ModelParams f = parse_theta("0.3,0.2,0.3,0.1,0.2,0.2,1,1,0.1");
  CHECK(f.b(0, 1) == 0.1);
  CHECK(parse_theta("a").phi == 0.1);
  CHECK_THROWS_AS(parse_theta("1,2,3"), DataError);
  CHECK_THROWS_AS(parse_theta("0.4,x,0.2,0.4,1,0.5,0.7"), DataError);
  CHECK_THROWS_AS(parse_theta("0.4,0.3,0.2,0.4,-1,0.5,0.7"), DomainError);
  CHECK(output_format_from_string("csv") == OutputFormat::csv);
  CHECK_THROWS_AS(output_format_from_string("xml"), DataError);
}
