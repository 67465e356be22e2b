#pragma once

#include <cstdint>

#include "amplest/planner.hpp"
#include "amplest/sampler.hpp"

namespace amplest {

/// Maximum-likelihood point on the angle grid.
struct Estimate {
  double theta_hat = 0.0;
  double a_hat = 0.0;
  std::int64_t grid_index = 0;
  double log_likelihood = 0.0;  ///< may be -inf
  std::int64_t grid_size = 0;
};

/// hits ln p + (shots - hits) ln(1 - p) with p = good_prob(theta, depth).
/// Zero-count terms are dropped; an impossible outcome gives -inf.
double log_lik_single(double theta, int depth, std::int64_t shots, std::int64_t hits);

/// Sum of log_lik_single over the record entries.
double log_lik(double theta, const MeasurementRecord& record);

/// Grid point i of n evenly spaced angles on [0, pi/2], endpoints included.
double grid_theta(std::int64_t index, std::int64_t grid_size);

/// Exact argmax of log_lik over the grid, ties to the smallest angle. Uses an
/// interval branch-and-bound that returns the same point as a full scan.
Estimate grid_maximize(const MeasurementRecord& record, std::int64_t grid_size);

/// Reference implementation: evaluates every grid point.
Estimate grid_maximize_exhaustive(const MeasurementRecord& record, std::int64_t grid_size);

/// Draws a record for `a_true` under `plan` and maximizes its likelihood.
Estimate run_mlqae(double a_true, const Plan& plan, std::uint64_t seed);

}  // namespace amplest
