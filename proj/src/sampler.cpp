#include "amplest/sampler.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "amplest/planner.hpp"

namespace amplest {

namespace {

constexpr double kInversionThreshold = 30.0;

// Sequential search inversion; requires p <= 0.5.
std::int64_t binomial_inversion(std::int64_t n, double p, CounterRng& rng) {
  const double q = 1.0 - p;
  const double s = p / q;
  const double a = static_cast<double>(n + 1) * s;
  const double r0 = std::exp(static_cast<double>(n) * std::log1p(-p));
  for (;;) {
    double r = r0;
    double u = rng.next_double();
    std::int64_t x = 0;
    bool exhausted = false;
    while (u > r) {
      u -= r;
      ++x;
      r *= a / static_cast<double>(x) - s;
      if (x > n || r <= 0.0) {
        exhausted = true;
        break;
      }
    }
    if (!exhausted) return x;
  }
}

double stirling_tail(double k) {
  static constexpr std::array<double, 10> kTail = {
      0.0810614667953272,  0.0413406959554092,  0.0276779256849983, 0.02079067210376509,
      0.0166446911898211,  0.0138761288230707,  0.0118967099458917, 0.0104112652619720,
      0.00925546218271273, 0.00833056343336287};
  if (k <= 9.0) return kTail[static_cast<std::size_t>(k)];
  const double kp1sq = (k + 1.0) * (k + 1.0);
  return (1.0 / 12.0 - (1.0 / 360.0 - 1.0 / 1260.0 / kp1sq) / kp1sq) / (k + 1.0);
}

// BTRS; requires p <= 0.5 and n p >= 10.
std::int64_t binomial_btrs(std::int64_t n_int, double p, CounterRng& rng) {
  const double n = static_cast<double>(n_int);
  const double spq = std::sqrt(n * p * (1.0 - p));
  const double b = 1.15 + 2.53 * spq;
  const double a = -0.0873 + 0.0248 * b + 0.01 * p;
  const double c = n * p + 0.5;
  const double v_r = 0.92 - 4.2 / b;
  const double r = p / (1.0 - p);
  const double alpha = (2.83 + 5.1 / b) * spq;
  const double m = std::floor((n + 1.0) * p);
  for (;;) {
    const double u = rng.next_double() - 0.5;
    double v = rng.next_double();
    const double us = 0.5 - std::abs(u);
    const double k = std::floor((2.0 * a / us + b) * u + c);
    if (us >= 0.07 && v <= v_r) return static_cast<std::int64_t>(k);
    if (k < 0.0 || k > n) continue;
    v = std::log(v * alpha / (a / (us * us) + b));
    const double bound = (m + 0.5) * std::log((m + 1.0) / (r * (n - m + 1.0))) +
                         (n + 1.0) * std::log((n - m + 1.0) / (n - k + 1.0)) +
                         (k + 0.5) * std::log(r * (n - k + 1.0) / (k + 1.0)) + stirling_tail(m) +
                         stirling_tail(n - m) - stirling_tail(k) - stirling_tail(n - k);
    if (v <= bound) return static_cast<std::int64_t>(k);
  }
}

}  // namespace

void MeasurementRecord::validate() const {
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& e = entries[i];
    if (e.depth < 0) throw std::invalid_argument("record: depth must be non-negative");
    if (e.shots < 1) throw std::invalid_argument("record: shots must be at least 1");
    if (e.hits < 0 || e.hits > e.shots) throw std::invalid_argument("record: hits must lie in [0, shots]");
    if (i > 0 && e.depth < entries[i - 1].depth) {
      throw std::invalid_argument("record: depths must be non-decreasing");
    }
  }
  if (a_true && !(*a_true >= 0.0 && *a_true <= 1.0)) {
    throw std::invalid_argument("record: a_true must lie in [0, 1]");
  }
}

double theta_of_amplitude(double a) {
  if (!(a >= 0.0 && a <= 1.0)) throw std::domain_error("theta_of_amplitude: a must lie in [0, 1]");
  return std::asin(std::sqrt(a));
}

double amplitude_of_theta(double theta) {
  const double s = std::sin(theta);
  return s * s;
}

double good_prob(double theta, int depth) {
  const double s = std::sin((2.0 * depth + 1.0) * theta);
  return s * s;
}

std::int64_t binomial_draw(std::int64_t n, double p, CounterRng& rng) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("binomial_draw: p must lie in [0, 1]");
  if (n < 0) throw std::invalid_argument("binomial_draw: n must be non-negative");
  if (n == 0 || p == 0.0) return 0;
  if (p == 1.0) return n;

  const bool flip = p > 0.5;
  const double pp = flip ? 1.0 - p : p;
  const std::int64_t k = static_cast<double>(n) * pp <= kInversionThreshold
                             ? binomial_inversion(n, pp, rng)
                             : binomial_btrs(n, pp, rng);
  return flip ? n - k : k;
}

MeasurementRecord draw_record(double a, const Schedule& schedule, std::int64_t n_shot,
                              std::uint64_t seed) {
  if (n_shot < 1) throw std::invalid_argument("draw_record: n_shot must be at least 1");
  const double theta = theta_of_amplitude(a);
  MeasurementRecord record;
  record.a_true = a;
  record.seed = seed;
  const auto depths = schedule.depths();
  const auto fractions = schedule.fractions();
  record.entries.reserve(depths.size());
  for (std::size_t j = 0; j < depths.size(); ++j) {
    CounterRng rng(derive_key(seed, {static_cast<std::uint64_t>(j)}));
    const std::int64_t shots = shots_at(fractions[j], n_shot);
    const std::int64_t hits = binomial_draw(shots, good_prob(theta, depths[j]), rng);
    record.entries.push_back({depths[j], shots, hits});
  }
  return record;
}

}  // namespace amplest
