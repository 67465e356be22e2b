// Command-line front end: planning, single estimates, and the experiment harness.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "amplest/harness.hpp"
#include "amplest/json_io.hpp"
#include "amplest/likelihood.hpp"
#include "amplest/planner.hpp"
#include "amplest/sampler.hpp"
#include "amplest/statevector.hpp"

namespace {

using namespace amplest;

// Writes through `fn` to `path`, or to stdout when path is "-".
template <class Fn>
void emit(const std::string& path, Fn fn) {
  if (path == "-") {
    fn(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  fn(out);
  if (!out) throw std::runtime_error("failed writing output file: " + path);
}

void print_json(const json& j) { std::cout << j.dump(2) << '\n'; }

struct Common {
  int max_depth = 16;
  double epsilon = 1e-3;
  double delta = 0.01;
  bool jitter = false;
  double spread_coeff = 2.0;
  double grid_multiplier = 3.0;
  std::uint64_t seed = 0;
  std::string out = "-";
};

void add_plan_flags(CLI::App* cmd, Common& c, bool required) {
  cmd->add_option("--max-depth", c.max_depth, "Largest Grover depth")->required(required)->check(CLI::NonNegativeNumber);
  cmd->add_option("--epsilon", c.epsilon, "Target precision")->required(required);
  cmd->add_option("--delta", c.delta, "Failure probability")->capture_default_str();
  cmd->add_flag("--jitter", c.jitter, "Use the depth-jittered schedule");
  cmd->add_option("--spread-coeff", c.spread_coeff, "Jitter spread coefficient c")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Maximum-likelihood amplitude estimation: planning, simulation and experiments"};
  app.require_subcommand(1);

  // plan
  Common plan_args;
  auto* plan_cmd = app.add_subcommand("plan", "Print the resource plan as JSON");
  add_plan_flags(plan_cmd, plan_args, true);
  plan_cmd->add_option("--grid-multiplier", plan_args.grid_multiplier, "Grid points per 1/epsilon")->capture_default_str();
  plan_cmd->callback([&] {
    const auto& a = plan_args;
    print_json(to_json(make_plan(a.epsilon, a.delta, a.max_depth, a.jitter, a.spread_coeff, a.grid_multiplier)));
  });

  // estimate
  Common est_args;
  double amplitude = 0.5;
  std::string record_out;
  std::string record_in;
  auto* est_cmd = app.add_subcommand("estimate", "Simulate one measurement record and print the estimate");
  add_plan_flags(est_cmd, est_args, true);
  est_cmd->add_option("--amplitude", amplitude, "True amplitude a");
  est_cmd->add_option("--seed", est_args.seed, "Base seed")->capture_default_str();
  est_cmd->add_option("--grid-multiplier", est_args.grid_multiplier, "Grid points per 1/epsilon")->capture_default_str();
  est_cmd->add_option("--record-out", record_out, "Also write the measurement record JSON here");
  est_cmd->add_option("--record", record_in, "Estimate from this record JSON instead of simulating")->check(CLI::ExistingFile);
  est_cmd->callback([&] {
    const auto& a = est_args;
    const Plan plan = make_plan(a.epsilon, a.delta, a.max_depth, a.jitter, a.spread_coeff, a.grid_multiplier);
    MeasurementRecord record;
    if (!record_in.empty()) {
      std::ifstream in(record_in);
      record = record_from_json(json::parse(in));
    } else {
      record = draw_record(amplitude, plan.schedule, plan.n_shot, a.seed);
    }
    if (!record_out.empty()) emit(record_out, [&](std::ostream& o) { o << to_json(record).dump(2) << '\n'; });
    print_json(to_json(grid_maximize(record, plan.grid_size)));
  });

  // sweep
  Common sweep_args;
  std::int64_t sweep_points = 0;
  auto* sweep_cmd = app.add_subcommand("sweep", "One estimate per evenly spaced amplitude (CSV)");
  add_plan_flags(sweep_cmd, sweep_args, true);
  sweep_cmd->add_option("--points", sweep_points, "Number of amplitudes in [0, 1]")->required()->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--seed", sweep_args.seed, "Base seed")->required();
  sweep_cmd->add_option("--grid-multiplier", sweep_args.grid_multiplier, "Grid points per 1/epsilon")->capture_default_str();
  sweep_cmd->add_option("--out", sweep_args.out, "Output CSV path, - for stdout")->required();
  sweep_cmd->callback([&] {
    ExperimentConfig c;
    c.mode = ExperimentMode::sweep;
    c.epsilon = sweep_args.epsilon;
    c.delta = sweep_args.delta;
    c.max_depth = sweep_args.max_depth;
    c.jittered = sweep_args.jitter;
    c.spread_coeff = sweep_args.spread_coeff;
    c.grid_multiplier = sweep_args.grid_multiplier;
    c.points = sweep_points;
    c.base_seed = sweep_args.seed;
    const auto rows = sweep_amplitudes(c);
    emit(sweep_args.out, [&](std::ostream& o) { write_csv(o, std::span<const SweepRow>(rows)); });
  });

  // precision-curve
  Common pc_args;
  std::vector<double> pc_amplitudes;
  std::vector<std::int64_t> pc_shots;
  std::int64_t pc_runs = 1000;
  std::optional<double> pc_epsilon;
  auto* pc_cmd = app.add_subcommand("precision-curve", "Achieved precision per amplitude and shot count (CSV)");
  pc_cmd->add_option("--amplitudes", pc_amplitudes, "Comma-separated amplitudes")->required()->delimiter(',');
  pc_cmd->add_option("--shots", pc_shots, "Comma-separated shot counts")->delimiter(',');
  pc_cmd->add_option("--runs", pc_runs, "Runs per point")->capture_default_str()->check(CLI::PositiveNumber);
  pc_cmd->add_option("--max-depth", pc_args.max_depth, "Largest Grover depth")->capture_default_str();
  pc_cmd->add_option("--delta", pc_args.delta, "Failure probability")->capture_default_str();
  pc_cmd->add_option("--epsilon", pc_epsilon, "Also run the shot count planned for this precision");
  pc_cmd->add_flag("--jitter", pc_args.jitter, "Use the depth-jittered schedule");
  pc_cmd->add_option("--spread-coeff", pc_args.spread_coeff, "Jitter spread coefficient c")->capture_default_str();
  pc_cmd->add_option("--grid-multiplier", pc_args.grid_multiplier, "Grid points per 1/epsilon_min")->capture_default_str();
  pc_cmd->add_option("--seed", pc_args.seed, "Base seed")->capture_default_str();
  pc_cmd->add_option("--out", pc_args.out, "Output CSV path, - for stdout")->required();
  pc_cmd->callback([&] {
    ExperimentConfig c;
    c.mode = ExperimentMode::precision_curve;
    c.amplitudes = pc_amplitudes;
    c.n_shot_list = pc_shots;
    c.runs_per_point = pc_runs;
    c.max_depth = pc_args.max_depth;
    c.delta = pc_args.delta;
    c.jittered = pc_args.jitter;
    c.spread_coeff = pc_args.spread_coeff;
    c.grid_multiplier = pc_args.grid_multiplier;
    c.base_seed = pc_args.seed;
    if (pc_epsilon) {
      c.epsilon = *pc_epsilon;
      c.include_planned_shots = true;
    }
    const auto rows = precision_curve(c);
    emit(pc_args.out, [&](std::ostream& o) { write_csv(o, std::span<const PrecisionRow>(rows)); });
  });

  // exceptional
  int exc_depth = 0;
  auto* exc_cmd = app.add_subcommand("exceptional", "List the exceptional amplitudes of a depth as JSON");
  exc_cmd->add_option("--max-depth", exc_depth, "Grover depth d")->required()->check(CLI::NonNegativeNumber);
  exc_cmd->callback([&] { print_json(json(exceptional_values(exc_depth))); });

  // exceptional-region
  Common reg_args;
  reg_args.grid_multiplier = 30.0;
  int reg_k = 0;
  std::int64_t reg_points = 100;
  std::int64_t reg_runs = 500;
  auto* reg_cmd = app.add_subcommand("exceptional-region", "Achieved precision around one exceptional amplitude (CSV)");
  add_plan_flags(reg_cmd, reg_args, true);
  reg_cmd->add_option("--k", reg_k, "Index of the exceptional amplitude")->required();
  reg_cmd->add_option("--points", reg_points, "Amplitudes across a_k +- 4 epsilon")->capture_default_str()->check(CLI::PositiveNumber);
  reg_cmd->add_option("--runs", reg_runs, "Runs per amplitude")->capture_default_str()->check(CLI::PositiveNumber);
  reg_cmd->add_option("--grid-multiplier", reg_args.grid_multiplier, "Grid points per 1/epsilon")->capture_default_str();
  reg_cmd->add_option("--seed", reg_args.seed, "Base seed")->capture_default_str();
  reg_cmd->add_option("--out", reg_args.out, "Output CSV path, - for stdout")->required();
  reg_cmd->callback([&] {
    ExperimentConfig c;
    c.mode = ExperimentMode::exceptional_region;
    c.epsilon = reg_args.epsilon;
    c.delta = reg_args.delta;
    c.max_depth = reg_args.max_depth;
    c.jittered = reg_args.jitter;
    c.spread_coeff = reg_args.spread_coeff;
    c.grid_multiplier = reg_args.grid_multiplier;
    c.k = reg_k;
    c.points = reg_points;
    c.runs_per_point = reg_runs;
    c.base_seed = reg_args.seed;
    const auto rows = exceptional_region_scan(c);
    emit(reg_args.out, [&](std::ostream& o) { write_csv(o, std::span<const RegionRow>(rows)); });
  });

  // call-ratio
  std::vector<int> cr_depths;
  double cr_epsilon = 1e-5;
  double cr_delta = 0.01;
  double cr_spread = 2.0;
  std::string cr_out = "-";
  auto* cr_cmd = app.add_subcommand("call-ratio", "Planned oracle calls with and without jittering (CSV)");
  cr_cmd->add_option("--depths", cr_depths, "Comma-separated maximum depths")->required()->delimiter(',');
  cr_cmd->add_option("--epsilon", cr_epsilon, "Target precision")->capture_default_str();
  cr_cmd->add_option("--delta", cr_delta, "Failure probability")->capture_default_str();
  cr_cmd->add_option("--spread-coeff", cr_spread, "Jitter spread coefficient c")->capture_default_str();
  cr_cmd->add_option("--out", cr_out, "Output CSV path, - for stdout")->capture_default_str();
  cr_cmd->callback([&] {
    const auto rows = call_ratio_table(cr_depths, cr_epsilon, cr_delta, cr_spread);
    emit(cr_out, [&](std::ostream& o) { write_csv(o, std::span<const CallRatioRow>(rows)); });
  });

  // validate-oracle
  int vo_qubits = 4;
  int vo_trials = 20;
  int vo_power = 8;
  std::uint64_t vo_seed = 2023;
  auto* vo_cmd = app.add_subcommand("validate-oracle", "Compare the dense simulator with the closed form");
  vo_cmd->add_option("--qubits", vo_qubits, "Largest register size")->capture_default_str();
  vo_cmd->add_option("--trials", vo_trials, "Random (G, a) per register size")->capture_default_str();
  vo_cmd->add_option("--max-power", vo_power, "Largest Grover power")->capture_default_str();
  vo_cmd->add_option("--seed", vo_seed, "Seed")->capture_default_str();
  vo_cmd->callback([&] { print_json(to_json(validate_oracle(vo_qubits, vo_trials, vo_power, vo_seed))); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "amplest: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
