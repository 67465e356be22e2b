#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "amplest/json_io.hpp"
#include "amplest/parallel.hpp"
#include "amplest/planner.hpp"
#include "amplest/rng.hpp"
#include "amplest/sampler.hpp"
#include "oracles.hpp"

using namespace amplest;

TEST_CASE("theta and amplitude conversions") {
  CHECK(theta_of_amplitude(0.0) == 0.0);
  CHECK(theta_of_amplitude(1.0) == std::numbers::pi / 2);
  CHECK(theta_of_amplitude(0.5) == doctest::Approx(std::numbers::pi / 4).epsilon(1e-15));
  CHECK_THROWS_AS(theta_of_amplitude(-1e-9), std::domain_error);
  CHECK_THROWS_AS(theta_of_amplitude(1.0 + 1e-12), std::domain_error);

  CounterRng rng(7);
  for (int i = 0; i < 1000; ++i) {
    const double a = rng.next_double();
    CHECK(std::abs(amplitude_of_theta(theta_of_amplitude(a)) - a) <= 1e-15);
  }
}

TEST_CASE("good_prob") {
  CHECK(good_prob(std::numbers::pi / 4, 0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(good_prob(std::numbers::pi / 6, 1) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(good_prob(0.0, 17) == 0.0);
  CHECK(good_prob(std::numbers::pi / 2, 17) == 1.0);

  for (int d : {1, 4, 16, 50}) {
    for (double a : exceptional_values(d)) {
      const double p = good_prob(theta_of_amplitude(a), d);
      CHECK(std::min(p, 1.0 - p) <= 1e-12);
    }
  }
}

TEST_CASE("good_prob is mirror-symmetric about its nodes") {
  for (int d : {0, 1, 3, 16}) {
    const double step = std::numbers::pi / (2.0 * (2 * d + 1));
    for (int k = 0; k <= 2 * d + 1; ++k) {
      for (double r : {1e-4, 0.01, 0.3 * step}) {
        const double node = k * step;
        CHECK(std::abs(good_prob(node + r, d) - good_prob(node - r, d)) <= 1e-12);
      }
    }
  }
}

TEST_CASE("counter rng is a pure function of key and counter") {
  CounterRng a(42);
  CounterRng b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
  CHECK(CounterRng(42).next_u64() != CounterRng(43).next_u64());
  CHECK(CounterRng(42).substream(0).key() != CounterRng(42).substream(1).key());
  CHECK(derive_key(1, {2, 3}) != derive_key(1, {3, 2}));

  CounterRng u(5);
  for (int i = 0; i < 10000; ++i) {
    const double x = u.next_double();
    const double y = u.next_open_double();
    CHECK((x >= 0.0 && x < 1.0));
    CHECK((y > 0.0 && y < 1.0));
  }
}

TEST_CASE("binomial_draw edge cases") {
  CounterRng rng(1);
  CHECK(binomial_draw(100, 0.0, rng) == 0);
  CHECK(binomial_draw(100, 1.0, rng) == 100);
  CHECK(binomial_draw(0, 0.4, rng) == 0);
  CHECK_THROWS_AS(binomial_draw(10, 1.5, rng), std::domain_error);
  CHECK_THROWS_AS(binomial_draw(10, -0.1, rng), std::domain_error);
  for (int i = 0; i < 1000; ++i) {
    const auto k = binomial_draw(1000000, 1e-12, rng);
    CHECK((k >= 0 && k <= 1000000));
  }
}

TEST_CASE("binomial_draw mean at large n") {
  CounterRng rng(42);
  const std::int64_t n = 1000000;
  double sum = 0.0;
  for (int i = 0; i < 100; ++i) sum += static_cast<double>(binomial_draw(n, 0.3, rng)) / n;
  const double mean = sum / 100.0;
  CHECK(std::abs(mean - 0.3) <= 5.0 * std::sqrt(0.3 * 0.7 / n / 100.0));
}

// Pearson chi-square against the exact pmf, covering both the inversion and
// the rejection branch and the p > 0.5 reflection.
TEST_CASE("binomial_draw matches the exact distribution") {
  struct Case {
    std::int64_t n;
    double p;
  };
  for (const Case c : {Case{20, 0.3}, Case{100, 0.2}, Case{60, 0.5}, Case{1000, 0.1}, Case{5000, 0.37},
                       Case{200, 0.93}, Case{100000, 0.5}, Case{50, 0.999}}) {
    CAPTURE(c.n);
    CAPTURE(c.p);
    const int draws = 200000;
    CounterRng rng(derive_key(99, {static_cast<std::uint64_t>(c.n)}));
    std::vector<double> counts(static_cast<std::size_t>(c.n + 1), 0.0);
    for (int i = 0; i < draws; ++i) counts[static_cast<std::size_t>(binomial_draw(c.n, c.p, rng))] += 1.0;

    // Pool cells with expected count < 5 into their neighbours.
    double chi2 = 0.0;
    int cells = 0;
    double obs_acc = 0.0;
    double exp_acc = 0.0;
    for (std::int64_t k = 0; k <= c.n; ++k) {
      obs_acc += counts[static_cast<std::size_t>(k)];
      exp_acc += draws * testing::binomial_pmf(c.n, k, c.p);
      if (exp_acc >= 5.0) {
        chi2 += (obs_acc - exp_acc) * (obs_acc - exp_acc) / exp_acc;
        ++cells;
        obs_acc = exp_acc = 0.0;
      }
    }
    if (exp_acc > 0.0) chi2 += (obs_acc - exp_acc) * (obs_acc - exp_acc) / std::max(exp_acc, 1e-300);
    const double dof = cells - 1;
    // ~5 sigma above the mean of a chi-square with `dof` degrees of freedom.
    CHECK(chi2 <= dof + 5.0 * std::sqrt(2.0 * dof) + 10.0);
  }
}

TEST_CASE("binomial concentration at 1e6 shots") {
  int inside = 0;
  const int trials = 1000;
  const double p = 0.37;
  const std::int64_t n = 1000000;
  for (int t = 0; t < trials; ++t) {
    CounterRng rng(derive_key(2024, {static_cast<std::uint64_t>(t)}));
    const double rate = static_cast<double>(binomial_draw(n, p, rng)) / n;
    if (std::abs(rate - p) <= 5.0 * std::sqrt(p * (1 - p) / n)) ++inside;
  }
  CHECK(inside >= 990);
}

TEST_CASE("draw_record") {
  const Schedule s = build_exp_nu(16);
  const auto zero = draw_record(0.0, s, 100, 1);
  for (const auto& e : zero.entries) CHECK(e.hits == 0);
  const auto one = draw_record(1.0, s, 100, 1);
  for (const auto& e : one.entries) CHECK(e.hits == e.shots);

  const auto r = draw_record(0.3, Schedule::custom({0}), 100000, 77);
  REQUIRE(r.entries.size() == 1);
  CHECK(r.entries[0].shots == 100000);
  CHECK(std::abs(static_cast<double>(r.entries[0].hits) / 100000 - 0.3) <= 5 * std::sqrt(0.21 / 1e5));
  CHECK(*r.a_true == 0.3);
  CHECK(*r.seed == 77);

  const auto j = draw_record(0.3, jitter(build_exp_nu(16), 2.0), 1267, 5);
  REQUIRE(j.entries.size() == 9);
  CHECK(j.entries[0].shots == 1267);
  CHECK(j.entries[8].shots == 317);
  CHECK_THROWS_AS(draw_record(0.3, s, 0, 1), std::invalid_argument);
}

TEST_CASE("draw_record is reproducible and independent of thread count") {
  const Schedule s = jitter(build_exp_nu(50), 2.0);
  const auto reference = draw_record(0.4321, s, 11688, 123456789);
  CHECK(draw_record(0.4321, s, 11688, 123456789) == reference);
  CHECK_FALSE(draw_record(0.4321, s, 11688, 123456790) == reference);

  std::vector<MeasurementRecord> records(64);
  parallel_for(64, [&](std::int64_t i) { records[static_cast<std::size_t>(i)] = draw_record(0.4321, s, 11688, 123456789); }, 4);
  for (const auto& r : records) CHECK(r == reference);
}

TEST_CASE("record validation and JSON") {
  MeasurementRecord bad;
  bad.entries = {{0, 10, 11}};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad.entries = {{2, 10, 1}, {1, 10, 1}};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad.entries = {{0, 0, 0}};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  const auto r = draw_record(0.25, build_exp_nu(8), 50, 3);
  const json j = to_json(r);
  CHECK(j["entries"].size() == r.entries.size());
  CHECK(j["entries"][0].contains("hits"));
  CHECK(record_from_json(j) == r);
  CHECK_THROWS(record_from_json(json::parse(R"({"entries":[{"depth":0,"shots":3,"hits":4}]})")));
}
