#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "amplest/harness.hpp"
#include "amplest/planner.hpp"
#include "amplest/rng.hpp"

using namespace amplest;

namespace {

template <class Rows>
std::string csv_of(const Rows& rows) {
  std::ostringstream out;
  write_csv(out, std::span(rows));
  return out.str();
}

// Runs `fn` with AMPLEST_THREADS set to `threads`, restoring the old value.
template <class Fn>
auto with_threads(int threads, Fn fn) {
  const char* old = std::getenv("AMPLEST_THREADS");
  const std::string saved = old ? old : "";
  setenv("AMPLEST_THREADS", std::to_string(threads).c_str(), 1);
  auto result = fn();
  if (old) {
    setenv("AMPLEST_THREADS", saved.c_str(), 1);
  } else {
    unsetenv("AMPLEST_THREADS");
  }
  return result;
}

bool near_exceptional(double a, int d, double width) {
  for (double ak : exceptional_values(d)) {
    if (std::abs(a - ak) <= width) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("achieved_precision order statistic") {
  std::vector<double> e(100);
  for (int i = 0; i < 100; ++i) e[static_cast<std::size_t>(i)] = i + 1;
  CHECK(achieved_precision(e, 0.01) == 99.0);
  CHECK(achieved_precision(e, 0.5) == 50.0);
  CHECK(achieved_precision(e, 0.999) == 1.0);

  const std::vector<double> fives(37, 5.0);
  for (double d : {0.01, 0.3, 0.9}) CHECK(achieved_precision(fives, d) == 5.0);

  CHECK_THROWS_AS(achieved_precision(std::vector<double>{}, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(achieved_precision(e, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(achieved_precision(e, 1.0), std::invalid_argument);
}

TEST_CASE("achieved_precision of half-normal errors") {
  // Box-Muller on the counter RNG; the 99% half-normal quantile is 2.5758293035489008.
  CounterRng rng(31415);
  std::vector<double> e;
  e.reserve(100000);
  while (e.size() < 100000) {
    const double u1 = rng.next_open_double();
    const double u2 = rng.next_double();
    const double r = std::sqrt(-2.0 * std::log(u1));
    e.push_back(std::abs(r * std::cos(2 * std::numbers::pi * u2)));
    e.push_back(std::abs(r * std::sin(2 * std::numbers::pi * u2)));
  }
  CHECK(std::abs(achieved_precision(e, 0.01) / 2.5758293035489008 - 1.0) <= 0.03);
}

TEST_CASE("achieved_precision is monotone in delta and order-free") {
  CounterRng rng(8);
  std::vector<double> e(513);
  for (auto& x : e) x = rng.next_double();
  double prev = achieved_precision(e, 0.001);
  for (int i = 1; i < 100; ++i) {
    const double v = achieved_precision(e, 0.001 + 0.0099 * i);
    CHECK(v <= prev);
    prev = v;
  }
  const double ref = achieved_precision(e, 0.05);
  for (int t = 0; t < 20; ++t) {
    for (std::size_t i = e.size() - 1; i > 0; --i) std::swap(e[i], e[rng.next_u64() % (i + 1)]);
    CHECK(achieved_precision(e, 0.05) == ref);
  }
}

TEST_CASE("run_seed") {
  CHECK(run_seed(1, ExperimentMode::sweep, 0, 0) == derive_key(1, {tag_hash("sweep"), 0, 0}));
  CHECK(run_seed(1, ExperimentMode::sweep, 0, 0) != run_seed(1, ExperimentMode::precision_curve, 0, 0));
  CHECK(run_seed(1, ExperimentMode::sweep, 1, 0) != run_seed(1, ExperimentMode::sweep, 0, 1));
}

TEST_CASE("config amplitudes and validation") {
  ExperimentConfig c;
  c.points = 5;
  CHECK(config_amplitudes(c) == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
  c.points = 1;
  CHECK(config_amplitudes(c) == std::vector<double>{0.5});
  c.amplitudes = {0.1, 0.2};
  CHECK(config_amplitudes(c) == c.amplitudes);

  ExperimentConfig bad;
  bad.points = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad.points = 3;
  bad.epsilon = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad.epsilon = 1e-3;
  bad.amplitudes = {1.2};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad.amplitudes.clear();
  bad.runs_per_point = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("sweep with three points") {
  ExperimentConfig c;
  c.points = 3;
  c.base_seed = 42;
  const auto rows = sweep_amplitudes(c);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].a_true == 0.0);
  CHECK(rows[1].a_true == 0.5);
  CHECK(rows[2].a_true == 1.0);
  CHECK(rows[0].abs_err == 0.0);
  CHECK(rows[2].abs_err == 0.0);
  CHECK(rows[1].abs_err <= 1e-3);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].seed == run_seed(42, ExperimentMode::sweep, i, 0));
    CHECK(rows[i].abs_err == std::abs(rows[i].a_hat - rows[i].a_true));
  }
}

TEST_CASE("harness output does not depend on the thread count") {
  ExperimentConfig sweep;
  sweep.points = 101;
  sweep.jittered = true;
  sweep.base_seed = 7;
  const auto one = with_threads(1, [&] { return csv_of(sweep_amplitudes(sweep)); });
  const auto four = with_threads(4, [&] { return csv_of(sweep_amplitudes(sweep)); });
  CHECK(one == four);
  CHECK(one == csv_of(sweep_amplitudes(sweep)));

  ExperimentConfig curve;
  curve.mode = ExperimentMode::precision_curve;
  curve.amplitudes = {0.2, 0.5};
  curve.n_shot_list = {64, 256};
  curve.runs_per_point = 40;
  curve.base_seed = 9;
  const auto c1 = with_threads(1, [&] { return csv_of(precision_curve(curve)); });
  const auto c3 = with_threads(3, [&] { return csv_of(precision_curve(curve)); });
  CHECK(c1 == c3);

  curve.base_seed = 10;
  CHECK(csv_of(precision_curve(curve)) != c1);
}

TEST_CASE("sweep failures concentrate near exceptional values") {
  ExperimentConfig c;
  c.points = 2000;
  c.base_seed = 2023;
  const auto rows = sweep_amplitudes(c);
  int failures = 0;
  int near = 0;
  int typical = 0;
  int typical_ok = 0;
  for (const auto& r : rows) {
    const bool in_band = near_exceptional(r.a_true, 16, 4e-3);
    if (!in_band) {
      ++typical;
      if (r.abs_err <= 1e-3) ++typical_ok;
    }
    if (r.abs_err > 2e-3) {
      ++failures;
      if (in_band) ++near;
    }
  }
  CHECK(typical_ok >= 0.95 * typical);
  CHECK(near >= 0.9 * failures);
}

TEST_CASE("precision curve layout") {
  ExperimentConfig c;
  c.mode = ExperimentMode::precision_curve;
  c.amplitudes = {0.5};
  c.n_shot_list = {128};
  c.include_planned_shots = true;
  c.runs_per_point = 1000;
  c.base_seed = 1;
  const auto rows = precision_curve(c);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].n_shot == 128);
  CHECK(rows[1].n_shot == 1111);
  CHECK(rows[1].runs == 1000);
  CHECK(rows[1].eps_achieved <= 1e-3);
  CHECK(rows[0].eps_achieved > rows[1].eps_achieved);

  c.include_planned_shots = false;
  c.n_shot_list.clear();
  CHECK_THROWS_AS(precision_curve(c), std::invalid_argument);
}

TEST_CASE("exceptional region scan at reduced scale") {
  ExperimentConfig c;
  c.mode = ExperimentMode::exceptional_region;
  c.max_depth = 16;
  c.k = 16;
  c.epsilon = 1e-3;
  c.points = 9;
  c.runs_per_point = 200;
  c.grid_multiplier = 30;
  c.base_seed = 11;
  const auto rows = exceptional_region_scan(c);
  REQUIRE(rows.size() == 9);
  const double ak = exceptional_values(16)[16];
  CHECK(rows.front().a_true == doctest::Approx(ak - 4e-3).epsilon(1e-12));
  CHECK(rows[4].a_true == doctest::Approx(ak).epsilon(1e-12));
  CHECK(rows.back().a_true == doctest::Approx(ak + 4e-3).epsilon(1e-12));
  double worst = 0.0;
  for (const auto& r : rows) {
    CHECK(r.eps_achieved >= 0.0);
    CHECK(r.runs == 200);
    worst = std::max(worst, r.eps_achieved);
  }
  CHECK(worst > 1e-3);

  c.k = 34;
  CHECK_THROWS_AS(exceptional_region_scan(c), std::invalid_argument);
}

TEST_CASE("exceptional region at d = 50 before and after jittering") {
  ExperimentConfig c;
  c.mode = ExperimentMode::exceptional_region;
  c.max_depth = 50;
  c.k = 50;
  c.epsilon = 1e-4;
  c.points = 100;
  c.runs_per_point = 500;
  c.grid_multiplier = 30;
  c.base_seed = 1;
  const double ak = exceptional_values(50)[50];

  const auto plain = exceptional_region_scan(c);
  double mid_max = 0.0;
  for (const auto& r : plain) {
    if (std::abs(r.a_true - ak) <= c.epsilon) mid_max = std::max(mid_max, r.eps_achieved);
  }
  CHECK(mid_max > c.epsilon);

  c.jittered = true;
  const auto jit = exceptional_region_scan(c);
  double worst = 0.0;
  for (const auto& r : jit) worst = std::max(worst, r.eps_achieved);
  CHECK(worst <= 2 * c.epsilon);
}

TEST_CASE("call ratio table") {
  const std::vector<int> d16{16};
  const auto rows = call_ratio_table(d16, 1e-3, 0.01, 2.0);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].n_calls == 75548);
  CHECK(rows[0].n_calls_jittered == 82385);
  CHECK(rows[0].ratio == doctest::Approx(82385.0 / 75548.0).epsilon(1e-15));

  // jitter leaves {0, 1} unchanged
  const std::vector<int> d1{1};
  CHECK(call_ratio_table(d1, 1e-3, 0.01, 2.0)[0].ratio == 1.0);

  const std::vector<int> deep{64, 128, 256, 512, 1024};
  const auto trend = call_ratio_table(deep, 1e-6, 0.01, 2.0);
  for (const auto& r : trend) {
    CAPTURE(r.d);
    CHECK(r.ratio >= 0.98);
    CHECK(r.ratio <= 1.15);
  }
  CHECK(std::abs(trend.back().ratio - 1) < std::abs(trend.front().ratio - 1));
  CHECK_THROWS_AS(call_ratio_table(std::vector<int>{}, 1e-3, 0.01, 2.0), std::invalid_argument);
}

TEST_CASE("csv formatting") {
  CHECK(format_real(0.1) == "0.10000000000000001");
  CHECK(format_real(1.0) == "1");
  const std::vector<CallRatioRow> rows{{16, 75548, 82385, 82385.0 / 75548.0}};
  CHECK(csv_of(rows) == "d,n_calls,n_calls_jittered,ratio\n16,75548,82385,1.0904987557579287\n");
  const std::vector<RegionRow> region{{0.25, 0.001, 10}};
  CHECK(csv_of(region) == "a_true,eps_achieved,runs\n0.25,0.001,10\n");
}
