#include "amplest/planner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <stdexcept>

#include "amplest/special_functions.hpp"

namespace amplest {

namespace {

void check_amplitude_open(double a, const char* who) {
  if (!(a > 0.0 && a < 1.0)) {
    throw std::domain_error(std::string(who) + ": amplitude must lie strictly inside (0, 1)");
  }
}

std::int64_t checked_ceil(double x, const char* who) {
  if (!(x < 9.0e18)) throw std::overflow_error(std::string(who) + ": result does not fit in 64 bits");
  return static_cast<std::int64_t>(std::ceil(x));
}

}  // namespace

double required_fisher(double epsilon, double delta) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("required_fisher: epsilon must be positive");
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("required_fisher: delta must lie in (0, 1)");
  }
  const double z = erfinv(1.0 - delta);
  return 2.0 * z * z / (epsilon * epsilon);
}

std::int64_t required_shots(double epsilon, double delta, const Schedule& schedule,
                            std::optional<double> a) {
  if (!(epsilon > 0.0 && epsilon < 0.5)) {
    throw std::invalid_argument("required_shots: epsilon must lie in (0, 0.5)");
  }
  if (a && !(*a > 0.0 && *a < 1.0)) {
    throw std::invalid_argument("required_shots: amplitude must lie in (0, 1)");
  }
  const double variance = a ? *a * (1.0 - *a) : 0.25;
  const double s = s2(schedule);
  // a(1-a) * I_required / s2^2, with I_required = 2 erfinv^2 / eps^2.
  const double shots = variance * required_fisher(epsilon, delta) / (s * s);
  return std::max<std::int64_t>(1, checked_ceil(shots, "required_shots"));
}

std::int64_t shots_at(ShotFraction fraction, std::int64_t n_shot) {
  return (fraction.num * n_shot + fraction.den - 1) / fraction.den;
}

std::int64_t total_calls(const Schedule& schedule, std::int64_t n_shot) {
  const auto d = schedule.depths();
  const auto f = schedule.fractions();
  std::int64_t calls = 0;
  for (std::size_t j = 0; j < d.size(); ++j) {
    calls += shots_at(f[j], n_shot) * (2 * static_cast<std::int64_t>(d[j]) + 1);
  }
  return calls;
}

double speedup_factor(const Schedule& schedule) {
  const double s = s2(schedule);
  return s * s / s1(schedule);
}

double fisher_info(double a, const Schedule& schedule, std::int64_t n_shot) {
  check_amplitude_open(a, "fisher_info");
  const double s = s2(schedule);
  return static_cast<double>(n_shot) * s * s / (a * (1.0 - a));
}

double expected_avg_error(double a, const Schedule& schedule, std::int64_t n_shot) {
  check_amplitude_open(a, "expected_avg_error");
  if (n_shot < 1) throw std::invalid_argument("expected_avg_error: n_shot must be at least 1");
  return std::sqrt(a * (1.0 - a) / static_cast<double>(n_shot)) / s2(schedule);
}

std::vector<double> exceptional_values(int depth) {
  if (depth < 0) throw std::invalid_argument("exceptional_values: depth must be non-negative");
  const int top = 2 * depth + 1;
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(top) + 1);
  out.push_back(0.0);
  for (int k = 1; k < top; ++k) {
    // sin^2(x) = (1 - cos 2x) / 2 keeps the symmetry a_k + a_{top-k} = 1 tight.
    const double angle = std::numbers::pi * k / top;
    out.push_back(0.5 * (1.0 - std::cos(angle)));
  }
  out.push_back(1.0);
  return out;
}

double single_shot_fisher(double a, int depth) {
  check_amplitude_open(a, "single_shot_fisher");
  if (depth < 0) throw std::invalid_argument("single_shot_fisher: depth must be non-negative");
  const double w = 2.0 * depth + 1.0;
  return w * w / (a * (1.0 - a));
}

std::int64_t grid_size_for(double epsilon, double multiplier) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("grid_size_for: epsilon must be positive");
  if (!(multiplier > 0.0)) throw std::invalid_argument("grid_size_for: multiplier must be positive");
  const double x = multiplier / epsilon;
  // Absorb representation error so that 3 / 1e-3 is 3000, not 3001.
  const double nearest = std::round(x);
  const double n = std::abs(x - nearest) <= 1e-9 * nearest ? nearest : std::ceil(x);
  return std::max<std::int64_t>(2, checked_ceil(n, "grid_size_for"));
}

Schedule plan_schedule(int max_depth, bool jittered, double spread_coeff) {
  if (max_depth < 0) throw std::invalid_argument("plan_schedule: max depth must be non-negative");
  Schedule schedule = max_depth == 0 ? Schedule::custom({0}) : build_exp_nu(max_depth);
  // A lone depth 0 has nothing to jitter.
  if (jittered && schedule.size() >= 2) return jitter(schedule, spread_coeff);
  return schedule;
}

Plan make_plan(double epsilon, double delta, int max_depth, bool jittered, double spread_coeff,
               double grid_multiplier) {
  if (!(epsilon > 0.0 && epsilon < 0.5)) {
    throw std::invalid_argument("make_plan: epsilon must lie in (0, 0.5)");
  }
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("make_plan: delta must lie in (0, 1)");
  if (max_depth < 0) throw std::invalid_argument("make_plan: max depth must be non-negative");

  Schedule schedule = plan_schedule(max_depth, jittered, spread_coeff);

  const std::int64_t n_shot = required_shots(epsilon, delta, schedule);
  const std::int64_t n_calls = total_calls(schedule, n_shot);
  const std::int64_t grid = grid_size_for(epsilon, grid_multiplier);
  return Plan{epsilon, delta, max_depth, std::move(schedule), n_shot, n_calls, grid, grid_multiplier};
}

}  // namespace amplest
