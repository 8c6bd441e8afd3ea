#pragma once

#include <json.hpp>

#include "bcp/estimation.hpp"
#include "bcp/forecast.hpp"
#include "bcp/inference.hpp"
#include "bcp/montecarlo.hpp"

namespace bcp {

using json = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;

json to_json(const ModelParams& p);
/// Accepts the layout written by to_json; missing off-diagonal entries default to 0.
ModelParams params_from_json(const json& j);

json to_json(const FitResult& f);
json to_json(const SeResult& se);
json to_json(const TestResult& t);
json to_json(const ForecastRecord& r);
json to_json(const ErrorMetrics& m);
json to_json(const ParamSummary& s);

}  // namespace bcp
