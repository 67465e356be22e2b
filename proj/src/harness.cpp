#include "amplest/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "amplest/likelihood.hpp"
#include "amplest/parallel.hpp"
#include "amplest/planner.hpp"
#include "amplest/rng.hpp"
#include "amplest/special_functions.hpp"

namespace amplest {

namespace {

// ceil() that treats values within rounding noise of an integer as that integer.
std::int64_t ceil_rank(double x) {
  const double nearest = std::round(x);
  if (std::abs(x - nearest) <= 1e-9 * std::max(1.0, nearest)) return static_cast<std::int64_t>(nearest);
  return static_cast<std::int64_t>(std::ceil(x));
}

// Runs `runs` seeded MLQAE estimates per amplitude and reduces each group to
// its achieved precision. Point p uses seeds run_seed(base, mode, p, r).
std::vector<double> achieved_per_point(std::span<const double> amplitudes, const Plan& plan,
                                       std::int64_t runs, double delta, ExperimentMode mode,
                                       std::uint64_t base_seed, std::uint64_t point_offset = 0) {
  const auto n_points = static_cast<std::int64_t>(amplitudes.size());
  std::vector<double> errors(static_cast<std::size_t>(n_points * runs));
  parallel_for(n_points * runs, [&](std::int64_t task) {
    const std::int64_t p = task / runs;
    const std::int64_t r = task % runs;
    const double a = amplitudes[static_cast<std::size_t>(p)];
    const auto seed = run_seed(base_seed, mode, point_offset + static_cast<std::uint64_t>(p),
                               static_cast<std::uint64_t>(r));
    errors[static_cast<std::size_t>(task)] = std::abs(run_mlqae(a, plan, seed).a_hat - a);
  });

  std::vector<double> out;
  out.reserve(amplitudes.size());
  for (std::int64_t p = 0; p < n_points; ++p) {
    const auto first = errors.begin() + p * runs;
    out.push_back(achieved_precision(std::span<const double>(&*first, static_cast<std::size_t>(runs)), delta));
  }
  return out;
}

}  // namespace

std::string_view to_string(ExperimentMode mode) {
  switch (mode) {
    case ExperimentMode::sweep: return "sweep";
    case ExperimentMode::precision_curve: return "precision_curve";
    case ExperimentMode::exceptional_region: return "exceptional_region";
    case ExperimentMode::call_ratio: return "call_ratio";
    case ExperimentMode::exceptional_list: return "exceptional_list";
  }
  return "sweep";
}

void ExperimentConfig::validate() const {
  if (!(epsilon > 0.0 && epsilon < 0.5)) throw std::invalid_argument("config: epsilon must lie in (0, 0.5)");
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("config: delta must lie in (0, 1)");
  if (max_depth < 0) throw std::invalid_argument("config: max depth must be non-negative");
  if (!(spread_coeff > 0.0)) throw std::invalid_argument("config: spread coefficient must be positive");
  if (!(grid_multiplier > 0.0)) throw std::invalid_argument("config: grid multiplier must be positive");
  if (runs_per_point < 1) throw std::invalid_argument("config: runs per point must be at least 1");
  for (double a : amplitudes) {
    if (!(a >= 0.0 && a <= 1.0)) throw std::invalid_argument("config: amplitudes must lie in [0, 1]");
  }
  if (amplitudes.empty() && points < 1 &&
      (mode == ExperimentMode::sweep || mode == ExperimentMode::exceptional_region ||
       mode == ExperimentMode::precision_curve)) {
    throw std::invalid_argument("config: need explicit amplitudes or a positive point count");
  }
  for (auto n : n_shot_list) {
    if (n < 1) throw std::invalid_argument("config: shot counts must be at least 1");
  }
  if (mode == ExperimentMode::precision_curve && n_shot_list.empty() && !include_planned_shots) {
    throw std::invalid_argument("config: precision curve needs at least one shot count");
  }
  if (mode == ExperimentMode::call_ratio && depth_list.empty()) {
    throw std::invalid_argument("config: call ratio needs at least one depth");
  }
}

double achieved_precision(std::span<const double> errors, double delta) {
  if (errors.empty()) throw std::invalid_argument("achieved_precision: no errors given");
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("achieved_precision: delta must lie in (0, 1)");
  std::vector<double> sorted(errors.begin(), errors.end());
  const auto n = static_cast<std::int64_t>(sorted.size());
  const std::int64_t rank = std::clamp<std::int64_t>(ceil_rank((1.0 - delta) * static_cast<double>(n)), 1, n);
  std::nth_element(sorted.begin(), sorted.begin() + (rank - 1), sorted.end());
  return sorted[static_cast<std::size_t>(rank - 1)];
}

std::uint64_t run_seed(std::uint64_t base_seed, ExperimentMode mode, std::uint64_t point,
                       std::uint64_t run) {
  return derive_key(base_seed, {tag_hash(to_string(mode)), point, run});
}

std::vector<double> config_amplitudes(const ExperimentConfig& config) {
  if (!config.amplitudes.empty()) return config.amplitudes;
  const std::int64_t m = config.points;
  if (m == 1) return {0.5};
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(m));
  for (std::int64_t i = 0; i < m; ++i) {
    out.push_back(i == m - 1 ? 1.0 : static_cast<double>(i) / static_cast<double>(m - 1));
  }
  return out;
}

std::vector<SweepRow> sweep_amplitudes(const ExperimentConfig& config) {
  config.validate();
  const Plan plan = make_plan(config.epsilon, config.delta, config.max_depth, config.jittered,
                              config.spread_coeff, config.grid_multiplier);
  const auto amplitudes = config_amplitudes(config);
  std::vector<SweepRow> rows(amplitudes.size());
  parallel_for(static_cast<std::int64_t>(amplitudes.size()), [&](std::int64_t i) {
    const double a = amplitudes[static_cast<std::size_t>(i)];
    const auto seed = run_seed(config.base_seed, ExperimentMode::sweep, static_cast<std::uint64_t>(i), 0);
    const Estimate est = run_mlqae(a, plan, seed);
    rows[static_cast<std::size_t>(i)] = {a, est.a_hat, std::abs(est.a_hat - a), seed};
  });
  return rows;
}

std::vector<PrecisionRow> precision_curve(const ExperimentConfig& config) {
  config.validate();
  const Schedule schedule = plan_schedule(config.max_depth, config.jittered, config.spread_coeff);
  std::vector<std::int64_t> shots = config.n_shot_list;
  if (config.include_planned_shots) {
    const std::int64_t planned = required_shots(config.epsilon, config.delta, schedule);
    if (std::find(shots.begin(), shots.end(), planned) == shots.end()) shots.push_back(planned);
  }

  // Precision the Gaussian model predicts at the largest shot count sets the grid.
  const std::int64_t n_max = *std::max_element(shots.begin(), shots.end());
  const double eps_min = erfinv(1.0 - config.delta) /
                         (s2(schedule) * std::sqrt(2.0 * static_cast<double>(n_max)));
  const std::int64_t grid = grid_size_for(eps_min, config.grid_multiplier);

  const auto amplitudes = config_amplitudes(config);
  std::vector<PrecisionRow> rows;
  rows.reserve(amplitudes.size() * shots.size());
  std::vector<std::vector<double>> per_shot;
  for (std::size_t s = 0; s < shots.size(); ++s) {
    Plan plan{eps_min, config.delta, config.max_depth, schedule, shots[s],
              total_calls(schedule, shots[s]), grid, config.grid_multiplier};
    // Point index p * |shots| + s keeps every (amplitude, n_shot) stream distinct.
    std::vector<double> eps(amplitudes.size());
    for (std::size_t p = 0; p < amplitudes.size(); ++p) {
      eps[p] = achieved_per_point(std::span<const double>(&amplitudes[p], 1), plan,
                                  config.runs_per_point, config.delta,
                                  ExperimentMode::precision_curve, config.base_seed,
                                  p * shots.size() + s)[0];
    }
    per_shot.push_back(std::move(eps));
  }
  for (std::size_t p = 0; p < amplitudes.size(); ++p) {
    for (std::size_t s = 0; s < shots.size(); ++s) {
      rows.push_back({amplitudes[p], shots[s], per_shot[s][p], config.runs_per_point});
    }
  }
  return rows;
}

std::vector<RegionRow> exceptional_region_scan(const ExperimentConfig& config) {
  config.validate();
  const auto centers = exceptional_values(config.max_depth);
  if (config.k < 0 || static_cast<std::size_t>(config.k) >= centers.size()) {
    throw std::invalid_argument("exceptional_region_scan: k out of range for this depth");
  }
  const double center = centers[static_cast<std::size_t>(config.k)];
  const Plan plan = make_plan(config.epsilon, config.delta, config.max_depth, config.jittered,
                              config.spread_coeff, config.grid_multiplier);

  std::vector<double> amplitudes = config.amplitudes;
  if (amplitudes.empty()) {
    const std::int64_t m = config.points;
    const double half_width = 4.0 * config.epsilon;
    for (std::int64_t i = 0; i < m; ++i) {
      const double t = m == 1 ? 0.5 : static_cast<double>(i) / static_cast<double>(m - 1);
      amplitudes.push_back(std::clamp(center - half_width + 2.0 * half_width * t, 0.0, 1.0));
    }
  }

  const auto eps = achieved_per_point(amplitudes, plan, config.runs_per_point, config.delta,
                                      ExperimentMode::exceptional_region, config.base_seed);
  std::vector<RegionRow> rows;
  rows.reserve(amplitudes.size());
  for (std::size_t i = 0; i < amplitudes.size(); ++i) {
    rows.push_back({amplitudes[i], eps[i], config.runs_per_point});
  }
  return rows;
}

std::vector<CallRatioRow> call_ratio_table(std::span<const int> depths, double epsilon,
                                           double delta, double spread_coeff) {
  if (depths.empty()) throw std::invalid_argument("call_ratio_table: no depths given");
  std::vector<CallRatioRow> rows;
  rows.reserve(depths.size());
  for (int d : depths) {
    const Plan plain = make_plan(epsilon, delta, d, false, spread_coeff);
    const Plan jittered = make_plan(epsilon, delta, d, true, spread_coeff);
    rows.push_back({d, plain.n_calls, jittered.n_calls,
                    static_cast<double>(jittered.n_calls) / static_cast<double>(plain.n_calls)});
  }
  return rows;
}

std::string format_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_csv(std::ostream& out, std::span<const SweepRow> rows) {
  out << "a_true,a_hat,abs_err,seed\n";
  for (const auto& r : rows) {
    out << format_real(r.a_true) << ',' << format_real(r.a_hat) << ',' << format_real(r.abs_err)
        << ',' << r.seed << '\n';
  }
}

void write_csv(std::ostream& out, std::span<const PrecisionRow> rows) {
  out << "a_true,n_shot,eps_achieved,runs\n";
  for (const auto& r : rows) {
    out << format_real(r.a_true) << ',' << r.n_shot << ',' << format_real(r.eps_achieved) << ','
        << r.runs << '\n';
  }
}

void write_csv(std::ostream& out, std::span<const RegionRow> rows) {
  out << "a_true,eps_achieved,runs\n";
  for (const auto& r : rows) {
    out << format_real(r.a_true) << ',' << format_real(r.eps_achieved) << ',' << r.runs << '\n';
  }
}

void write_csv(std::ostream& out, std::span<const CallRatioRow> rows) {
  out << "d,n_calls,n_calls_jittered,ratio\n";
  for (const auto& r : rows) {
    out << r.d << ',' << r.n_calls << ',' << r.n_calls_jittered << ',' << format_real(r.ratio) << '\n';
  }
}

}  // namespace amplest
