#pragma once

#include "json.hpp"

#include "amplest/harness.hpp"
#include "amplest/likelihood.hpp"
#include "amplest/planner.hpp"
#include "amplest/sampler.hpp"
#include "amplest/schedule.hpp"
#include "amplest/statevector.hpp"

namespace amplest {

using json = nlohmann::json;

// Schedule: {"kind", "depths", "fractions": [[num, den], ...], "nu", "spread_coeff", "beta"};
// absent optionals are omitted.
json to_json(const Schedule& schedule);
Schedule schedule_from_json(const json& j);

json to_json(const Plan& plan);
Plan plan_from_json(const json& j);

// {"a_true", "seed", "entries": [{"depth", "shots", "hits"}, ...]}
json to_json(const MeasurementRecord& record);
MeasurementRecord record_from_json(const json& j);

json to_json(const Estimate& estimate);
json to_json(const OracleReport& report);

}  // namespace amplest
