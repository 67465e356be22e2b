#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace amplest {

enum class ExperimentMode { sweep, precision_curve, exceptional_region, call_ratio, exceptional_list };

std::string_view to_string(ExperimentMode mode);

/// Inputs of one harness run. Fields not used by a mode are ignored.
struct ExperimentConfig {
  ExperimentMode mode = ExperimentMode::sweep;
  double epsilon = 1e-3;
  double delta = 0.01;
  int max_depth = 16;
  bool jittered = false;
  double spread_coeff = 2.0;
  double grid_multiplier = 3.0;

  std::vector<double> amplitudes;  ///< explicit amplitudes; when empty `points` are spread evenly
  std::int64_t points = 0;
  std::int64_t runs_per_point = 1;

  std::vector<std::int64_t> n_shot_list;  ///< precision_curve
  bool include_planned_shots = false;     ///< precision_curve: append required_shots(epsilon, ...)
  int k = 0;                              ///< exceptional_region: index into exceptional_values
  std::vector<int> depth_list;            ///< call_ratio

  std::uint64_t base_seed = 0;

  void validate() const;
};

struct SweepRow {
  double a_true = 0.0;
  double a_hat = 0.0;
  double abs_err = 0.0;
  std::uint64_t seed = 0;
};

struct PrecisionRow {
  double a_true = 0.0;
  std::int64_t n_shot = 0;
  double eps_achieved = 0.0;
  std::int64_t runs = 0;
};

struct RegionRow {
  double a_true = 0.0;
  double eps_achieved = 0.0;
  std::int64_t runs = 0;
};

struct CallRatioRow {
  int d = 0;
  std::int64_t n_calls = 0;
  std::int64_t n_calls_jittered = 0;
  double ratio = 0.0;
};

/// Smallest error bound met by at least a (1 - delta) fraction of runs: the
/// order statistic of rank ceil((1 - delta) R), no interpolation.
double achieved_precision(std::span<const double> errors, double delta);

/// Seed of one run: derive_key(base_seed, {tag_hash(mode name), point, run}).
std::uint64_t run_seed(std::uint64_t base_seed, ExperimentMode mode, std::uint64_t point,
                       std::uint64_t run);

/// Amplitudes of a config: the explicit list, or `points` evenly spaced on [0, 1].
std::vector<double> config_amplitudes(const ExperimentConfig& config);

/// One MLQAE run per amplitude at the planned shot count.
std::vector<SweepRow> sweep_amplitudes(const ExperimentConfig& config);

/// achieved_precision per (amplitude, n_shot) over runs_per_point runs. The
/// grid is sized for the precision expected at the largest n_shot.
std::vector<PrecisionRow> precision_curve(const ExperimentConfig& config);

/// achieved_precision across `points` amplitudes spanning a_k ± 4 epsilon.
std::vector<RegionRow> exceptional_region_scan(const ExperimentConfig& config);

/// Planned call counts with and without jittering for each maximum depth.
std::vector<CallRatioRow> call_ratio_table(std::span<const int> depths, double epsilon,
                                           double delta, double spread_coeff);

/// %.17g
std::string format_real(double x);

void write_csv(std::ostream& out, std::span<const SweepRow> rows);
void write_csv(std::ostream& out, std::span<const PrecisionRow> rows);
void write_csv(std::ostream& out, std::span<const RegionRow> rows);
void write_csv(std::ostream& out, std::span<const CallRatioRow> rows);

}  // namespace amplest
