#include "amplest/json_io.hpp"

#include <cmath>
#include <limits>

namespace amplest {

namespace {

// JSON has no infinities; an impossible record's log-likelihood is written as null.
json real_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

}  // namespace

json to_json(const Schedule& schedule) {
  json j;
  j["kind"] = std::string(to_string(schedule.kind()));
  j["depths"] = std::vector<int>(schedule.depths().begin(), schedule.depths().end());
  json fractions = json::array();
  for (const auto& f : schedule.fractions()) fractions.push_back({f.num, f.den});
  j["fractions"] = std::move(fractions);
  if (schedule.nu()) j["nu"] = *schedule.nu();
  if (schedule.spread_coeff()) j["spread_coeff"] = *schedule.spread_coeff();
  if (schedule.beta()) j["beta"] = *schedule.beta();
  return j;
}

Schedule schedule_from_json(const json& j) {
  std::vector<ShotFraction> fractions;
  if (j.contains("fractions")) {
    for (const auto& f : j.at("fractions")) {
      fractions.push_back({f.at(0).get<std::int64_t>(), f.at(1).get<std::int64_t>()});
    }
  }
  auto optional_real = [&](const char* key) -> std::optional<double> {
    if (j.contains(key) && !j.at(key).is_null()) return j.at(key).get<double>();
    return std::nullopt;
  };
  return Schedule(schedule_kind_from_string(j.at("kind").get<std::string>()),
                  j.at("depths").get<std::vector<int>>(), std::move(fractions), optional_real("nu"),
                  optional_real("spread_coeff"), optional_real("beta"));
}

json to_json(const Plan& plan) {
  return {{"epsilon", plan.epsilon},
          {"delta", plan.delta},
          {"max_depth", plan.max_depth},
          {"schedule", to_json(plan.schedule)},
          {"n_shot", plan.n_shot},
          {"n_calls", plan.n_calls},
          {"grid_size", plan.grid_size},
          {"grid_multiplier", plan.grid_multiplier}};
}

Plan plan_from_json(const json& j) {
  return Plan{j.at("epsilon").get<double>(),         j.at("delta").get<double>(),
              j.at("max_depth").get<int>(),          schedule_from_json(j.at("schedule")),
              j.at("n_shot").get<std::int64_t>(),    j.at("n_calls").get<std::int64_t>(),
              j.at("grid_size").get<std::int64_t>(), j.value("grid_multiplier", 3.0)};
}

json to_json(const MeasurementRecord& record) {
  json j;
  j["a_true"] = record.a_true ? json(*record.a_true) : json(nullptr);
  j["seed"] = record.seed ? json(*record.seed) : json(nullptr);
  json entries = json::array();
  for (const auto& e : record.entries) {
    entries.push_back({{"depth", e.depth}, {"shots", e.shots}, {"hits", e.hits}});
  }
  j["entries"] = std::move(entries);
  return j;
}

MeasurementRecord record_from_json(const json& j) {
  MeasurementRecord record;
  if (j.contains("a_true") && !j.at("a_true").is_null()) record.a_true = j.at("a_true").get<double>();
  if (j.contains("seed") && !j.at("seed").is_null()) record.seed = j.at("seed").get<std::uint64_t>();
  for (const auto& e : j.at("entries")) {
    record.entries.push_back({e.at("depth").get<int>(), e.at("shots").get<std::int64_t>(),
                              e.at("hits").get<std::int64_t>()});
  }
  record.validate();
  return record;
}

json to_json(const Estimate& estimate) {
  return {{"theta_hat", estimate.theta_hat},
          {"a_hat", estimate.a_hat},
          {"grid_index", estimate.grid_index},
          {"log_likelihood", real_or_null(estimate.log_likelihood)},
          {"grid_size", estimate.grid_size}};
}

json to_json(const OracleReport& report) {
  return {{"max_qubits", report.max_qubits},
          {"trials", report.trials},
          {"max_power", report.max_power},
          {"cases", report.cases},
          {"max_abs_deviation", report.max_abs_deviation},
          {"max_norm_error", report.max_norm_error}};
}

}  // namespace amplest
