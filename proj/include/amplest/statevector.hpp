#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace amplest {

using StateVector = std::vector<std::complex<double>>;

/// Dense preparation |A> = sqrt(a)|A_G> + sqrt(1-a)|A_B>, with |A_G> and |A_B>
/// uniform superpositions over the good and bad basis indices.
struct StatePrep {
  int n_qubits = 1;
  std::vector<std::size_t> good_set;
  double amplitude = 0.0;

  static constexpr int kMaxQubits = 12;

  std::size_t dimension() const { return std::size_t{1} << n_qubits; }
  /// Throws std::invalid_argument on out-of-range qubits/amplitude, or an
  /// empty, full, duplicated or out-of-range good set.
  void validate() const;
};

StateVector prepare_state(const StatePrep& sp);

/// One Grover iteration: phase-flip the good indices, then reflect about |A>.
StateVector apply_grover(std::span<const std::complex<double>> v, const StatePrep& sp);

/// Total probability on the good indices.
double good_subset_probability(std::span<const std::complex<double>> v, const StatePrep& sp);

/// Good-subset probability after `power` Grover iterations applied to |A>.
double grover_power_prob(const StatePrep& sp, int power);

struct OracleReport {
  int max_qubits = 0;
  int trials = 0;
  int max_power = 0;
  std::int64_t cases = 0;
  double max_abs_deviation = 0.0;
  double max_norm_error = 0.0;
};

/// Compares the dense simulation against sin^2((2 power + 1) arcsin sqrt(a)) for
/// n = 1..max_qubits, `trials` random (G, a) pairs per n and powers 0..max_power.
OracleReport validate_oracle(int max_qubits, int trials, int max_power = 8,
                             std::uint64_t seed = 2023);

}  // namespace amplest
