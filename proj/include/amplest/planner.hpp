#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "amplest/schedule.hpp"

namespace amplest {

/// Resource plan for one MLQAE run targeting precision epsilon with
/// confidence 1 - delta.
struct Plan {
  double epsilon = 0.0;
  double delta = 0.0;
  int max_depth = 0;
  Schedule schedule;
  std::int64_t n_shot = 0;   ///< per depth before fractions are applied
  std::int64_t n_calls = 0;  ///< calls to the state-preparation routine
  std::int64_t grid_size = 0;
  double grid_multiplier = 3.0;
};

/// Fisher information needed for |a_hat - a| <= epsilon with probability 1 - delta
/// under the Gaussian approximation: 2 erfinv^2(1 - delta) / epsilon^2.
double required_fisher(double epsilon, double delta);

/// Shots per depth needed to reach required_fisher. With `a` absent the
/// worst case a = 0.5 is used. Rounded up.
std::int64_t required_shots(double epsilon, double delta, const Schedule& schedule,
                            std::optional<double> a = std::nullopt);

/// ceil(F n_shot), computed exactly.
std::int64_t shots_at(ShotFraction fraction, std::int64_t n_shot);

/// Σ_j ceil(F_j n_shot) (2 d_j + 1).
std::int64_t total_calls(const Schedule& schedule, std::int64_t n_shot);

/// s2^2 / s1: speed-up over classical sampling at equal precision.
double speedup_factor(const Schedule& schedule);

double fisher_info(double a, const Schedule& schedule, std::int64_t n_shot);

/// sqrt(a (1 - a) / n_shot) / s2.
double expected_avg_error(double a, const Schedule& schedule, std::int64_t n_shot);

/// Amplitudes sin^2(k pi / (2 (2d + 1))), k = 0..2d+1, where depth d yields
/// good-state probability exactly 0 or 1.
std::vector<double> exceptional_values(int depth);

/// Fisher information about `a` carried by one shot at the given depth.
double single_shot_fisher(double a, int depth);

/// Grid points used for a target precision: ceil(multiplier / epsilon).
std::int64_t grid_size_for(double epsilon, double multiplier = 3.0);

/// build_exp_nu(max_depth), or {0} when max_depth is 0, optionally jittered.
Schedule plan_schedule(int max_depth, bool jittered = false, double spread_coeff = 2.0);

/// Exponential-ν schedule (or {0} for max_depth 0), optionally jittered, with
/// shot, call and grid budgets derived from epsilon and delta.
Plan make_plan(double epsilon, double delta, int max_depth, bool jittered = false,
               double spread_coeff = 2.0, double grid_multiplier = 3.0);

}  // namespace amplest
