#include "amplest/likelihood.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <stdexcept>
#include <vector>

namespace amplest {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr std::int64_t kLeafSize = 32;

// Binomial log-likelihood at probability p with the 0 ln 0 = 0 convention.
double binomial_term(double p, std::int64_t shots, std::int64_t hits) {
  double value = 0.0;
  if (hits > 0) {
    if (p == 0.0) return kNegInf;
    value += static_cast<double>(hits) * std::log(p);
  }
  const std::int64_t misses = shots - hits;
  if (misses > 0) {
    if (p == 1.0) return kNegInf;
    value += static_cast<double>(misses) * std::log1p(-p);
  }
  return value;
}

// Upper bound on one entry's term over the angle interval [theta_lo, theta_hi].
double term_upper_bound(const RecordEntry& e, double theta_lo, double theta_hi) {
  const double p_lo = good_prob(theta_lo, e.depth);
  const double p_hi = good_prob(theta_hi, e.depth);
  double p_min = std::min(p_lo, p_hi);
  double p_max = std::max(p_lo, p_hi);

  // sin^2 reaches 0 at even and 1 at odd multiples of pi/2 inside the phase range.
  const double w = 2.0 * e.depth + 1.0;
  const double phase_lo = w * theta_lo;
  const double phase_hi = w * theta_hi;
  const double slack = 1e-12 * (1.0 + phase_hi);
  const double k_lo = std::ceil((phase_lo - slack) / kHalfPi);
  const double k_hi = std::floor((phase_hi + slack) / kHalfPi);
  for (double k = k_lo; k <= std::min(k_hi, k_lo + 1.0); k += 1.0) {
    if (std::fmod(k, 2.0) == 0.0) {
      p_min = 0.0;
    } else {
      p_max = 1.0;
    }
  }

  const double p_mle = static_cast<double>(e.hits) / static_cast<double>(e.shots);
  return binomial_term(std::clamp(p_mle, p_min, p_max), e.shots, e.hits);
}

double interval_upper_bound(const MeasurementRecord& record, std::int64_t lo, std::int64_t hi,
                            std::int64_t grid_size) {
  const double theta_lo = grid_theta(lo, grid_size);
  const double theta_hi = grid_theta(hi, grid_size);
  double bound = 0.0;
  for (const auto& e : record.entries) {
    bound += term_upper_bound(e, theta_lo, theta_hi);
    if (bound == kNegInf) break;
  }
  return bound;
}

Estimate make_estimate(std::int64_t index, double value, std::int64_t grid_size) {
  const double theta = grid_theta(index, grid_size);
  return {theta, amplitude_of_theta(theta), index, value, grid_size};
}

void check_grid(const MeasurementRecord& record, std::int64_t grid_size) {
  if (grid_size < 2) throw std::invalid_argument("grid_maximize: grid size must be at least 2");
  record.validate();
}

}  // namespace

double log_lik_single(double theta, int depth, std::int64_t shots, std::int64_t hits) {
  if (shots < 0 || hits < 0 || hits > shots) {
    throw std::invalid_argument("log_lik_single: hits must lie in [0, shots]");
  }
  if (depth < 0) throw std::invalid_argument("log_lik_single: depth must be non-negative");
  return binomial_term(good_prob(theta, depth), shots, hits);
}

double log_lik(double theta, const MeasurementRecord& record) {
  double total = 0.0;
  for (const auto& e : record.entries) {
    total += binomial_term(good_prob(theta, e.depth), e.shots, e.hits);
    if (total == kNegInf) break;
  }
  return total;
}

double grid_theta(std::int64_t index, std::int64_t grid_size) {
  if (grid_size < 2 || index < 0 || index >= grid_size) {
    throw std::invalid_argument("grid_theta: index outside a grid of at least two points");
  }
  if (index == grid_size - 1) return kHalfPi;
  return kHalfPi * static_cast<double>(index) / static_cast<double>(grid_size - 1);
}

Estimate grid_maximize_exhaustive(const MeasurementRecord& record, std::int64_t grid_size) {
  check_grid(record, grid_size);
  std::int64_t best_index = 0;
  double best = log_lik(grid_theta(0, grid_size), record);
  for (std::int64_t i = 1; i < grid_size; ++i) {
    const double value = log_lik(grid_theta(i, grid_size), record);
    if (value > best) {
      best = value;
      best_index = i;
    }
  }
  return make_estimate(best_index, best, grid_size);
}

Estimate grid_maximize(const MeasurementRecord& record, std::int64_t grid_size) {
  check_grid(record, grid_size);

  struct Node {
    double bound;
    std::int64_t lo;
    std::int64_t hi;
  };
  // Highest bound first; lower start index first among equal bounds.
  auto worse = [](const Node& a, const Node& b) {
    return a.bound < b.bound || (a.bound == b.bound && a.lo > b.lo);
  };
  std::priority_queue<Node, std::vector<Node>, decltype(worse)> open(worse);

  double best = kNegInf;
  std::int64_t best_index = -1;
  auto consider = [&](std::int64_t i) {
    const double value = log_lik(grid_theta(i, grid_size), record);
    if (best_index < 0 || value > best || (value == best && i < best_index)) {
      best = value;
      best_index = i;
    }
  };
  // Slack for rounding differences between bounds and point evaluations.
  auto prunable = [&](double bound) {
    if (bound == kNegInf) return true;
    return best_index >= 0 && bound < best - 1e-7 * (1.0 + std::abs(best));
  };

  open.push({interval_upper_bound(record, 0, grid_size - 1, grid_size), 0, grid_size - 1});
  while (!open.empty()) {
    const Node node = open.top();
    open.pop();
    if (prunable(node.bound)) {
      if (node.bound != kNegInf) break;  // everything left is bounded lower still
      continue;
    }
    if (node.hi - node.lo + 1 <= kLeafSize) {
      for (std::int64_t i = node.lo; i <= node.hi; ++i) consider(i);
      continue;
    }
    const std::int64_t mid = node.lo + (node.hi - node.lo) / 2;
    open.push({interval_upper_bound(record, node.lo, mid, grid_size), node.lo, mid});
    open.push({interval_upper_bound(record, mid + 1, node.hi, grid_size), mid + 1, node.hi});
  }

  // Every point is impossible: the tie rule picks the first grid point.
  if (best_index < 0) return make_estimate(0, kNegInf, grid_size);
  return make_estimate(best_index, best, grid_size);
}

Estimate run_mlqae(double a_true, const Plan& plan, std::uint64_t seed) {
  if (!(a_true >= 0.0 && a_true <= 1.0)) throw std::domain_error("run_mlqae: a_true must lie in [0, 1]");
  const MeasurementRecord record = draw_record(a_true, plan.schedule, plan.n_shot, seed);
  return grid_maximize(record, plan.grid_size);
}

}  // namespace amplest
