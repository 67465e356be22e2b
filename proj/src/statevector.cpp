#include "amplest/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "amplest/rng.hpp"
#include "amplest/sampler.hpp"

namespace amplest {

namespace {

std::vector<bool> good_mask(const StatePrep& sp) {
  std::vector<bool> mask(sp.dimension(), false);
  for (std::size_t i : sp.good_set) mask[i] = true;
  return mask;
}

void grover_in_place(StateVector& v, const StateVector& prepared, const std::vector<bool>& mask) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (mask[i]) v[i] = -v[i];
  }
  // Reflection about |A>: v -> 2 <A|v> |A> - v.
  std::complex<double> overlap{0.0, 0.0};
  for (std::size_t i = 0; i < v.size(); ++i) overlap += std::conj(prepared[i]) * v[i];
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = 2.0 * overlap * prepared[i] - v[i];
}

}  // namespace

void StatePrep::validate() const {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw std::invalid_argument("StatePrep: n_qubits must lie in [1, 12]");
  }
  if (!(amplitude >= 0.0 && amplitude <= 1.0)) {
    throw std::invalid_argument("StatePrep: amplitude must lie in [0, 1]");
  }
  if (good_set.empty() || good_set.size() >= dimension()) {
    throw std::invalid_argument("StatePrep: good set must be a non-empty proper subset");
  }
  std::vector<std::size_t> sorted = good_set;
  std::sort(sorted.begin(), sorted.end());
  if (sorted.back() >= dimension()) throw std::invalid_argument("StatePrep: good index out of range");
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("StatePrep: duplicate good index");
  }
}

StateVector prepare_state(const StatePrep& sp) {
  sp.validate();
  const std::size_t dim = sp.dimension();
  const auto n_good = static_cast<double>(sp.good_set.size());
  const auto n_bad = static_cast<double>(dim - sp.good_set.size());
  const double good_amp = std::sqrt(sp.amplitude / n_good);
  const double bad_amp = std::sqrt((1.0 - sp.amplitude) / n_bad);

  const auto mask = good_mask(sp);
  StateVector v(dim);
  for (std::size_t i = 0; i < dim; ++i) v[i] = mask[i] ? good_amp : bad_amp;
  return v;
}

StateVector apply_grover(std::span<const std::complex<double>> v, const StatePrep& sp) {
  const StateVector prepared = prepare_state(sp);
  if (v.size() != prepared.size()) throw std::invalid_argument("apply_grover: dimension mismatch");
  StateVector out(v.begin(), v.end());
  grover_in_place(out, prepared, good_mask(sp));
  return out;
}

double good_subset_probability(std::span<const std::complex<double>> v, const StatePrep& sp) {
  if (v.size() != sp.dimension()) {
    throw std::invalid_argument("good_subset_probability: dimension mismatch");
  }
  double total = 0.0;
  for (std::size_t i : sp.good_set) total += std::norm(v[i]);
  return total;
}

double grover_power_prob(const StatePrep& sp, int power) {
  if (power < 0) throw std::invalid_argument("grover_power_prob: power must be non-negative");
  const StateVector prepared = prepare_state(sp);
  const auto mask = good_mask(sp);
  StateVector v = prepared;
  for (int p = 0; p < power; ++p) grover_in_place(v, prepared, mask);
  return good_subset_probability(v, sp);
}

OracleReport validate_oracle(int max_qubits, int trials, int max_power, std::uint64_t seed) {
  if (max_qubits < 1 || max_qubits > StatePrep::kMaxQubits) {
    throw std::invalid_argument("validate_oracle: qubits must lie in [1, 12]");
  }
  if (trials < 1) throw std::invalid_argument("validate_oracle: trials must be at least 1");
  if (max_power < 0) throw std::invalid_argument("validate_oracle: max power must be non-negative");

  OracleReport report{max_qubits, trials, max_power, 0, 0.0, 0.0};
  for (int n = 1; n <= max_qubits; ++n) {
    for (int t = 0; t < trials; ++t) {
      CounterRng rng(derive_key(seed, {static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(t)}));
      const std::size_t dim = std::size_t{1} << n;
      // Random proper subset: shuffle indices, keep the first g.
      std::vector<std::size_t> idx(dim);
      std::iota(idx.begin(), idx.end(), std::size_t{0});
      for (std::size_t i = dim - 1; i > 0; --i) {
        std::swap(idx[i], idx[rng.next_u64() % (i + 1)]);
      }
      const std::size_t g = 1 + rng.next_u64() % (dim - 1);
      StatePrep sp{n, std::vector<std::size_t>(idx.begin(), idx.begin() + static_cast<long>(g)),
                   rng.next_double()};

      const StateVector prepared = prepare_state(sp);
      const auto mask = good_mask(sp);
      const double theta = theta_of_amplitude(sp.amplitude);
      StateVector v = prepared;
      for (int power = 0; power <= max_power; ++power) {
        if (power > 0) grover_in_place(v, prepared, mask);
        double norm = 0.0;
        for (const auto& c : v) norm += std::norm(c);
        const double dev = std::abs(good_subset_probability(v, sp) - good_prob(theta, power));
        report.max_abs_deviation = std::max(report.max_abs_deviation, dev);
        report.max_norm_error = std::max(report.max_norm_error, std::abs(norm - 1.0));
        ++report.cases;
      }
    }
  }
  return report;
}

}  // namespace amplest
