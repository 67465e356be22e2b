#pragma once

// Independent reference computations for the unit and acceptance tests.
// Nothing here calls into the library's numerical code paths.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

namespace amplest::testing {

/// erf by its Maclaurin series in long double; accurate to ~1e-17 for |x| <= 3.
inline long double erf_series(long double x) {
  long double term = x;  // (-1)^n x^(2n+1) / n!
  long double sum = x;
  const long double x2 = x * x;
  for (int n = 1; n < 200; ++n) {
    term *= -x2 / n;
    const long double add = term / (2 * n + 1);
    sum += add;
    if (std::fabs(add) < 1e-22L * std::fabs(sum)) break;
  }
  return 2.0L / std::sqrt(std::numbers::pi_v<long double>) * sum;
}

/// Single-shot Fisher information about a at depth d: enumerate m in {0, 1},
/// differentiate log L_m numerically, take E_m[(d/da log L_m)^2].
inline double fisher_by_enumeration(double a, int d, double h = 1e-6) {
  auto p_of = [d](double x) {
    const double s = std::sin((2.0 * d + 1.0) * std::asin(std::sqrt(x)));
    return s * s;
  };
  const double p = p_of(a);
  const double p_plus = p_of(a + h);
  const double p_minus = p_of(a - h);
  const double score_good = (std::log(p_plus) - std::log(p_minus)) / (2 * h);
  const double score_bad = (std::log(1 - p_plus) - std::log(1 - p_minus)) / (2 * h);
  return p * score_good * score_good + (1 - p) * score_bad * score_bad;
}

/// Binomial pmf via lgamma.
inline double binomial_pmf(std::int64_t n, std::int64_t k, double p) {
  if (p == 0.0) return k == 0 ? 1.0 : 0.0;
  if (p == 1.0) return k == n ? 1.0 : 0.0;
  const double lg = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
  return std::exp(lg + k * std::log(p) + (n - k) * std::log1p(-p));
}

/// Σ w_j (2 d_j + 1)^power over a depth list.
inline double weighted_depth_sum(const std::vector<int>& depths, const std::vector<double>& w, int power) {
  double s = 0.0;
  for (std::size_t j = 0; j < depths.size(); ++j) s += w[j] * std::pow(2.0 * depths[j] + 1.0, power);
  return s;
}

}  // namespace amplest::testing
