#include "amplest/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace amplest {

namespace {

int round_half_away(double x) {
  // std::lround rounds halfway cases away from zero.
  return static_cast<int>(std::lround(x));
}

ShotFraction normalized(ShotFraction f) {
  if (f.den <= 0 || f.num <= 0 || f.num > f.den) {
    throw std::invalid_argument("shot fraction must lie in (0, 1]");
  }
  const std::int64_t g = std::gcd(f.num, f.den);
  return {f.num / g, f.den / g};
}

bool is_power_of_two(int d) { return d > 0 && (d & (d - 1)) == 0; }

}  // namespace

std::string_view to_string(ScheduleKind kind) {
  switch (kind) {
    case ScheduleKind::exp: return "exp";
    case ScheduleKind::exp_nu: return "exp_nu";
    case ScheduleKind::poly: return "poly";
    case ScheduleKind::jittered: return "jittered";
    case ScheduleKind::custom: return "custom";
  }
  return "custom";
}

ScheduleKind schedule_kind_from_string(std::string_view name) {
  if (name == "exp") return ScheduleKind::exp;
  if (name == "exp_nu") return ScheduleKind::exp_nu;
  if (name == "poly") return ScheduleKind::poly;
  if (name == "jittered") return ScheduleKind::jittered;
  if (name == "custom") return ScheduleKind::custom;
  throw std::invalid_argument("unknown schedule kind: " + std::string(name));
}

Schedule::Schedule(ScheduleKind kind, std::vector<int> depths, std::vector<ShotFraction> fractions,
                   std::optional<double> nu, std::optional<double> spread_coeff,
                   std::optional<double> beta)
    : kind_(kind),
      depths_(std::move(depths)),
      fractions_(std::move(fractions)),
      nu_(nu),
      spread_coeff_(spread_coeff),
      beta_(beta) {
  if (fractions_.empty()) fractions_.assign(depths_.size(), ShotFraction{});
  for (auto& f : fractions_) f = normalized(f);
  validate();
}

Schedule Schedule::custom(std::vector<int> depths, std::vector<ShotFraction> fractions) {
  return Schedule(ScheduleKind::custom, std::move(depths), std::move(fractions));
}

bool Schedule::all_unit_fractions() const {
  return std::all_of(fractions_.begin(), fractions_.end(),
                     [](const ShotFraction& f) { return f.is_unit(); });
}

std::vector<DepthGroup> Schedule::groups() const {
  std::vector<DepthGroup> out;
  std::size_t i = 0;
  while (i < fractions_.size()) {
    const std::size_t len = static_cast<std::size_t>(fractions_[i].den / fractions_[i].num);
    out.push_back({i, i + len});
    i += len;
  }
  return out;
}

void Schedule::validate() const {
  if (depths_.empty()) throw std::invalid_argument("schedule must contain at least one depth");
  if (depths_.size() != fractions_.size()) {
    throw std::invalid_argument("schedule depths and fractions differ in length");
  }
  if (depths_.front() < 0) throw std::invalid_argument("Grover depths must be non-negative");

  const bool allow_repeats = kind_ == ScheduleKind::poly;
  for (std::size_t i = 1; i < depths_.size(); ++i) {
    if (depths_[i] < depths_[i - 1] || (!allow_repeats && depths_[i] == depths_[i - 1])) {
      throw std::invalid_argument(allow_repeats ? "schedule depths must be non-decreasing"
                                                : "schedule depths must be strictly ascending");
    }
  }
  if ((kind_ == ScheduleKind::exp || kind_ == ScheduleKind::exp_nu) && depths_.front() != 0) {
    throw std::invalid_argument("exponential schedules start at depth 0");
  }

  // Non-unit fractions come in runs of g equal entries of 1/g.
  std::size_t i = 0;
  while (i < fractions_.size()) {
    const ShotFraction f = fractions_[i];
    if (f.is_unit()) {
      ++i;
      continue;
    }
    if (f.num != 1) {
      throw std::invalid_argument("fraction group size must be an integer");
    }
    const auto len = static_cast<std::size_t>(f.den);
    if (i + len > fractions_.size()) {
      throw std::invalid_argument("fraction group does not sum to 1");
    }
    for (std::size_t k = i; k < i + len; ++k) {
      if (fractions_[k] != f) throw std::invalid_argument("fraction group does not sum to 1");
    }
    i += len;
  }

  if (nu_ && !(*nu_ > 0.0)) throw std::invalid_argument("nu must be positive");
  if (spread_coeff_ && !(*spread_coeff_ > 0.0)) {
    throw std::invalid_argument("spread coefficient must be positive");
  }
  if (beta_ && !(*beta_ > 0.0 && *beta_ <= 1.0)) {
    throw std::invalid_argument("beta must lie in (0, 1]");
  }
}

Schedule build_exp(int q) {
  if (q < 2) throw std::invalid_argument("build_exp: q must be at least 2");
  if (q > 32) throw std::invalid_argument("build_exp: q too large for 32-bit depths");
  std::vector<int> depths{0};
  for (int j = 1; j <= q - 1; ++j) depths.push_back(1 << (j - 1));
  return Schedule(ScheduleKind::exp, std::move(depths), {}, 2.0);
}

Schedule build_exp_nu(int max_depth) {
  if (max_depth < 1) throw std::invalid_argument("build_exp_nu: max depth must be at least 1");
  if (max_depth == 1) return Schedule(ScheduleKind::exp_nu, {0, 1}, {});

  const double d = static_cast<double>(max_depth);
  int best_m = 1;
  double best_gap = std::abs(d - 2.0);
  // Beyond m = log2(d) + 1 the base only moves further below 2.
  const int m_limit = static_cast<int>(std::ceil(std::log2(d))) + 2;
  for (int m = 2; m <= m_limit; ++m) {
    const double gap = std::abs(std::pow(d, 1.0 / m) - 2.0);
    if (gap < best_gap) {
      best_gap = gap;
      best_m = m;
    }
  }
  const double nu = std::pow(d, 1.0 / best_m);

  std::vector<int> depths{0};
  for (int j = 1; j <= best_m; ++j) depths.push_back(round_half_away(std::pow(nu, j - 1)));
  depths.push_back(max_depth);
  return Schedule(ScheduleKind::exp_nu, std::move(depths), {}, nu);
}

Schedule build_poly(double beta, double epsilon) {
  if (!(beta > 0.0 && beta <= 1.0)) throw std::invalid_argument("build_poly: beta must lie in (0, 1]");
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw std::invalid_argument("build_poly: epsilon must lie in (0, 1)");
  }
  const double q_real = std::max(std::pow(epsilon, -2.0 * beta), std::log(1.0 / epsilon));
  if (q_real > 1e8) throw std::invalid_argument("build_poly: schedule would exceed 1e8 depths");
  const auto q = static_cast<int>(std::ceil(q_real));
  const double exponent = (1.0 - beta) / (2.0 * beta);

  std::vector<int> depths;
  depths.reserve(static_cast<std::size_t>(q));
  for (int j = 1; j <= q; ++j) {
    const double dj = std::pow(j, exponent);
    if (dj > static_cast<double>(std::numeric_limits<int>::max())) {
      throw std::invalid_argument("build_poly: depth overflows int");
    }
    depths.push_back(round_half_away(dj));
  }
  return Schedule(ScheduleKind::poly, std::move(depths), {}, std::nullopt, std::nullopt, beta);
}

Schedule jitter(const Schedule& schedule, double spread_coeff) {
  if (schedule.size() < 2) throw std::invalid_argument("jitter: schedule needs at least two depths");
  if (!(spread_coeff > 0.0)) throw std::invalid_argument("jitter: spread coefficient must be positive");
  const auto d = schedule.depths();
  for (std::size_t j = 1; j < d.size(); ++j) {
    if (d[j] <= d[j - 1]) throw std::invalid_argument("jitter: depths must be strictly ascending");
  }

  const int d_min = d.front();
  const int d_max = d.back();
  // Built in descending order, reversed at the end.
  std::vector<int> out;
  std::vector<ShotFraction> fractions;

  for (std::size_t idx = d.size(); idx-- > 0;) {
    const int dj = d[idx];
    bool do_jitter = false;
    int lower = dj;
    int upper = dj;
    if (dj > 0) {
      const int spread = std::max(0, round_half_away(std::log(spread_coeff * dj)));
      const int smallest_so_far = out.empty() ? std::numeric_limits<int>::max() : out.back();
      if (dj == d_max) {
        lower = dj - spread;
        upper = dj;
        do_jitter = lower > d[idx - 1] + 1;
      } else if (dj > d_min) {
        lower = dj - spread;
        upper = dj + spread;
        do_jitter = lower > d[idx - 1] + 1 && upper < smallest_so_far - 1;
      } else {
        lower = std::max(0, dj - spread);
        upper = dj + spread;
        do_jitter = upper < smallest_so_far - 1;
      }
    }

    if (do_jitter) {
      const std::int64_t width = upper - lower + 1;
      for (int k = upper; k >= lower; --k) {
        out.push_back(k);
        fractions.push_back({1, width});
      }
    } else {
      out.push_back(dj);
      fractions.push_back({1, 1});
    }
  }

  std::reverse(out.begin(), out.end());
  std::reverse(fractions.begin(), fractions.end());
  return Schedule(ScheduleKind::jittered, std::move(out), std::move(fractions), schedule.nu(),
                  spread_coeff, schedule.beta());
}

double s1(const Schedule& schedule) {
  double sum = 0.0;
  const auto d = schedule.depths();
  const auto f = schedule.fractions();
  for (std::size_t j = 0; j < d.size(); ++j) sum += f[j].value() * (2.0 * d[j] + 1.0);
  return sum;
}

double s2(const Schedule& schedule) {
  double sum = 0.0;
  const auto d = schedule.depths();
  const auto f = schedule.fractions();
  for (std::size_t j = 0; j < d.size(); ++j) {
    const double w = 2.0 * d[j] + 1.0;
    sum += f[j].value() * w * w;
  }
  return std::sqrt(sum);
}

ClosedFormS closed_form_s(int d) {
  if (d < 2 || !is_power_of_two(d)) {
    throw std::invalid_argument("closed_form_s: d must be a power of two, at least 2");
  }
  const double dd = d;
  const double log2d = std::log2(dd);
  return {4.0 * dd + log2d, std::sqrt(16.0 * dd * dd / 3.0 + 8.0 * dd + log2d - 10.0 / 3.0)};
}

NuBounds nu_bounds(int q) {
  if (q < 3) throw std::invalid_argument("nu_bounds: q must be at least 3");
  const double m = q - 2.0;
  return {std::pow(2.0, (q - 3.0) / m), std::pow(2.0, (q - 1.0) / m), q};
}

}  // namespace amplest
