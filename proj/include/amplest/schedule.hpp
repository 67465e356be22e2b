#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace amplest {

enum class ScheduleKind { exp, exp_nu, poly, jittered, custom };

std::string_view to_string(ScheduleKind kind);
ScheduleKind schedule_kind_from_string(std::string_view name);

/// Exact rational share of N_shot assigned to one depth. Jittered groups use 1/g.
struct ShotFraction {
  std::int64_t num = 1;
  std::int64_t den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool is_unit() const { return num == den; }

  friend bool operator==(const ShotFraction&, const ShotFraction&) = default;
};

/// Half-open index range [begin, end) of one fraction group within a schedule.
struct DepthGroup {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  friend bool operator==(const DepthGroup&, const DepthGroup&) = default;
};

/// Ordered Grover depths with their shot fractions and construction metadata.
///
/// A Schedule is validated on construction and immutable afterwards. Depths
/// are strictly ascending except for polynomial schedules, which keep repeated
/// depths as independent batches. Fractions are either 1 or belong to a
/// contiguous run of g entries that each carry 1/g.
class Schedule {
 public:
  Schedule(ScheduleKind kind, std::vector<int> depths, std::vector<ShotFraction> fractions,
           std::optional<double> nu = std::nullopt,
           std::optional<double> spread_coeff = std::nullopt,
           std::optional<double> beta = std::nullopt);

  /// Arbitrary user-supplied depths. Empty `fractions` means all 1.
  static Schedule custom(std::vector<int> depths, std::vector<ShotFraction> fractions = {});

  ScheduleKind kind() const { return kind_; }
  std::span<const int> depths() const { return depths_; }
  std::span<const ShotFraction> fractions() const { return fractions_; }
  const std::optional<double>& nu() const { return nu_; }
  const std::optional<double>& spread_coeff() const { return spread_coeff_; }
  const std::optional<double>& beta() const { return beta_; }

  std::size_t size() const { return depths_.size(); }
  int max_depth() const { return depths_.back(); }
  bool all_unit_fractions() const;

  /// Contiguous fraction groups in depth order; unit-fraction depths form singleton groups.
  std::vector<DepthGroup> groups() const;

  friend bool operator==(const Schedule&, const Schedule&) = default;

 private:
  void validate() const;

  ScheduleKind kind_;
  std::vector<int> depths_;
  std::vector<ShotFraction> fractions_;
  std::optional<double> nu_;
  std::optional<double> spread_coeff_;
  std::optional<double> beta_;
};

struct NuBounds {
  double lower = 0.0;
  double upper = 0.0;
  int q = 0;
};

struct ClosedFormS {
  double s1 = 0.0;
  double s2 = 0.0;
};

/// {0} ∪ {2^(j-1) : j = 1..q-1}.
Schedule build_exp(int q);

/// Exponential schedule whose base is the value closest to 2 that lands exactly
/// on `max_depth`. Ties between exponents go to the smaller exponent.
Schedule build_exp_nu(int max_depth);

/// Polynomial schedule Round(j^((1-beta)/(2 beta))) for j = 1..q, with
/// q = ceil(max(eps^(-2 beta), ln(1/eps))). Duplicate depths are retained.
Schedule build_poly(double beta, double epsilon);

/// Depth jittering: spreads each eligible depth's shots over a band of width
/// ~ln(c d) around it, highest depths first, never letting bands overlap or
/// touch. The input must be strictly ascending with at least two depths.
Schedule jitter(const Schedule& schedule, double spread_coeff);

/// Σ F_j (2 d_j + 1): calls to the state-preparation routine per N_shot.
double s1(const Schedule& schedule);

/// sqrt(Σ F_j (2 d_j + 1)^2).
double s2(const Schedule& schedule);

/// Closed forms of s1/s2 for the power-of-two exponential schedule ending at d.
ClosedFormS closed_form_s(int d);

NuBounds nu_bounds(int q);

}  // namespace amplest
