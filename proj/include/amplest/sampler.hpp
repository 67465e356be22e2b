#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "amplest/rng.hpp"
#include "amplest/schedule.hpp"

namespace amplest {

/// Outcome of the shots taken at one depth.
struct RecordEntry {
  int depth = 0;
  std::int64_t shots = 0;
  std::int64_t hits = 0;

  friend bool operator==(const RecordEntry&, const RecordEntry&) = default;
};

struct MeasurementRecord {
  std::vector<RecordEntry> entries;
  std::optional<double> a_true;
  std::optional<std::uint64_t> seed;

  /// Throws std::invalid_argument unless 0 <= hits <= shots, shots >= 1 and
  /// depths are non-decreasing.
  void validate() const;

  friend bool operator==(const MeasurementRecord&, const MeasurementRecord&) = default;
};

/// arcsin(sqrt(a)) in [0, pi/2].
double theta_of_amplitude(double a);
/// sin^2(theta).
double amplitude_of_theta(double theta);

/// Probability of a good outcome after `depth` Grover iterations: sin^2((2 depth + 1) theta).
double good_prob(double theta, int depth);

/// Binomial(n, p) variate. Sequential inversion when n min(p, 1-p) <= 30,
/// Hörmann's BTRS transformed rejection otherwise. p = 0 and p = 1 are exact.
std::int64_t binomial_draw(std::int64_t n, double p, CounterRng& rng);

/// Simulated measurement record. Depth j draws ceil(F_j n_shot) shots from the
/// substream derive_key(seed, {j}), so entries do not depend on evaluation order.
MeasurementRecord draw_record(double a, const Schedule& schedule, std::int64_t n_shot,
                              std::uint64_t seed);

}  // namespace amplest
