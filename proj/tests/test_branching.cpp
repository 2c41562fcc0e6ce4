#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "swarm/branching.hpp"
#include "swarm/ctmc.hpp"
#include "swarm/ensemble.hpp"
#include "swarm/error.hpp"

using namespace swarm;

namespace {

BranchingParams with_rho(double rho, double mu, Count k) { return {rho * mu, mu, k}; }

}  // namespace

TEST_CASE("extinction probability") {
  CHECK(extinction_probability(with_rho(0.8, 1.0, 3)) == 1.0);
  CHECK(extinction_probability(with_rho(1.0, 1.0, 3)) == 1.0);
  CHECK(extinction_probability({0.006 * 399, 1.0, 1}) ==
        doctest::Approx(1.0 / 2.394).epsilon(1e-14));
  CHECK(extinction_probability(with_rho(2.0, 1.0, 2)) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(extinction_probability({0.0, 1.0, 4}) == 1.0);
}

TEST_CASE("extinction probability agrees with simulated branching process") {
  const BranchingParams p = with_rho(2.0, 1.0, 2);
  constexpr std::size_t kRuns = 100000;
  const auto runs = run_replicates(11, kRuns, 1, [&](std::size_t, std::uint64_t seed) {
    return simulate_branching(p, seed, 60).extinct ? 1.0 : 0.0;
  });
  const auto est = estimate_mean(runs);
  const double q = extinction_probability(p);
  CHECK(std::abs(est.mean - q) <= 3.0 * binomial_standard_error(q, kRuns));
}

TEST_CASE("extinction CDF special cases") {
  CHECK(extinction_cdf(with_rho(2.394, 1.0, 1), 0.0) == 0.0);
  CHECK(extinction_cdf(with_rho(0.5, 2.0, 3), 0.0) == 0.0);
  for (double t : {0.1, 1.0, 7.5}) {
    CHECK(extinction_cdf({0.0, 1.3, 1}, t) == doctest::Approx(1.0 - std::exp(-1.3 * t)).epsilon(1e-14));
  }
  CHECK(extinction_cdf(with_rho(1.0, 1.0, 2), 1.0) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK_THROWS_AS(extinction_cdf(with_rho(1.5, 1.0, 1), -1.0), Error);
}

TEST_CASE("extinction CDF matches the direct formula away from criticality") {
  for (double rho : {0.0, 0.3, 0.9, 1.2, 2.394, 5.0}) {
    for (double t : {0.01, 0.5, 2.0, 10.0}) {
      const double g1 = oracle::g1_direct(rho, 1.7, t);
      CHECK(extinction_cdf(with_rho(rho, 1.7, 1), t) == doctest::Approx(g1).epsilon(1e-12));
      CHECK(extinction_cdf(with_rho(rho, 1.7, 3), t) ==
            doctest::Approx(g1 * g1 * g1).epsilon(1e-12));
    }
  }
}

TEST_CASE("extinction CDF invariants") {
  for (double rho : {0.2, 0.7, 1.0, 1.43, 2.394}) {
    for (Count k : {1, 2, 5}) {
      const auto p = with_rho(rho, 1.0, k);
      double prev = 0.0;
      for (int i = 0; i <= 400; ++i) {
        const double g = extinction_cdf(p, 0.05 * i);
        CHECK(g >= prev);
        CHECK(g < extinction_probability(p) + 1e-15);
        prev = g;
      }
      // Independence of lines of descent.
      for (double t : {0.3, 3.0}) {
        const double g1 = extinction_cdf(with_rho(rho, 1.0, 1), t);
        CHECK(extinction_cdf(p, t) == doctest::Approx(std::pow(g1, k)).epsilon(1e-14));
      }
      if (std::abs(rho - 1.0) > 0.1)
        CHECK(std::abs(extinction_cdf(p, 1e3) - extinction_probability(p)) < 1e-6);
    }
  }
}

TEST_CASE("extinction CDF is continuous across rho = 1") {
  for (double t : {0.1, 1.0, 10.0, 100.0}) {
    const double at_one = extinction_cdf(with_rho(1.0, 1.0, 1), t);
    for (double d : {1e-6, 1e-7, 1e-8, 5e-10, 2e-9}) {
      CHECK(std::abs(extinction_cdf(with_rho(1.0 + d, 1.0, 1), t) - at_one) <= 1e-4);
      CHECK(std::abs(extinction_cdf(with_rho(1.0 - d, 1.0, 1), t) - at_one) <= 1e-4);
    }
  }
}

TEST_CASE("expected extinction time") {
  CHECK(expected_extinction_time(with_rho(1e-12, 1.0, 1)) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(expected_extinction_time({0.0, 2.0, 1}) == doctest::Approx(0.5));
  CHECK(expected_extinction_time(with_rho(0.5, 1.0, 1)) ==
        doctest::Approx(std::log(2.0) / 0.5).epsilon(1e-14));

  SUBCASE("closed form equals the integral of the survival function") {
    for (double rho : {0.2, 0.5, 0.9}) {
      const double numeric = oracle::simpson(
          [&](double t) { return 1.0 - oracle::g1_direct(rho, 1.0, t); }, 0.0,
          60.0 / (1.0 - rho), 400000);
      CHECK(expected_extinction_time(with_rho(rho, 1.0, 1)) ==
            doctest::Approx(numeric).epsilon(1e-6));
    }
  }

  SUBCASE("several ancestors by quadrature") {
    const double k1 = expected_extinction_time(with_rho(0.5, 1.0, 1));
    const double k3 = expected_extinction_time(with_rho(0.5, 1.0, 3));
    // Reference value: arbitrary-precision quadrature of 1 - G_1(t)^3.
    CHECK(k3 == doctest::Approx(2.70406052783923433).epsilon(1e-8));
    CHECK(expected_extinction_time(with_rho(0.5, 1.0, 2)) ==
          doctest::Approx(2.15888308335967186).epsilon(1e-8));
    CHECK(k3 > k1);
    CHECK(k3 < 3.0 * k1);
    // Near-critical: slow decay, long horizon.
    const double near = expected_extinction_time(with_rho(0.99, 1.0, 2));
    const double direct = oracle::simpson(
        [](double t) {
          const double g = oracle::g1_direct(0.99, 1.0, t);
          return 1.0 - g * g;
        },
        0.0, 6000.0, 2000000);
    CHECK(near == doctest::Approx(direct).epsilon(1e-6));
  }

  SUBCASE("agrees with simulated branching process") {
    const BranchingParams p = with_rho(0.5, 1.0, 3);
    constexpr std::size_t kRuns = 100000;
    const auto times = run_replicates(5, kRuns, 1, [&](std::size_t, std::uint64_t seed) {
      return simulate_branching(p, seed, 100000).time;
    });
    const auto est = estimate_mean(times);
    CHECK(std::abs(est.mean - expected_extinction_time(p)) <= 3.0 * est.standard_error);
  }

  SUBCASE("supercritical is rejected") {
    CHECK_THROWS_AS(expected_extinction_time(with_rho(1.0, 1.0, 1)), Error);
    CHECK_THROWS_AS(expected_extinction_time(with_rho(2.4, 1.0, 2)), Error);
  }
}

TEST_CASE("mean extinction time given extinction") {
  CHECK(conditional_extinction_time(with_rho(0.5, 1.0, 2)) ==
        expected_extinction_time(with_rho(0.5, 1.0, 2)));
  CHECK_THROWS_AS(conditional_extinction_time(with_rho(1.0, 1.0, 1)), Error);

  const BranchingParams p = with_rho(2.0, 1.0, 2);
  constexpr std::size_t kRuns = 100000;
  const auto runs = run_replicates(8, kRuns, 1, [&](std::size_t, std::uint64_t seed) {
    return simulate_branching(p, seed, 80);
  });
  std::vector<double> times;
  for (const auto& r : runs)
    if (r.extinct) times.push_back(r.time);
  const auto est = estimate_mean(times);
  CHECK(std::abs(est.mean - conditional_extinction_time(p)) <= 3.0 * est.standard_error);
}

TEST_CASE("survival upper bound") {
  CHECK(survival_upper_bound(with_rho(2.0, 1.0, 2), 0.0) == 1.0);
  CHECK(survival_upper_bound(with_rho(2.0, 1.0, 2), 1e4) == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(survival_upper_bound(with_rho(2.394, 1.0, 1), 1e4) ==
        doctest::Approx(1.0 - 1.0 / 2.394).epsilon(1e-12));
}

TEST_CASE("validity horizon") {
  for (double rho : {0.5, 1.434, 2.394}) {
    const auto p = with_rho(rho, 1.0, 1);
    const double tb = validity_horizon(p);
    CHECK(extinction_cdf(p, tb) == doctest::Approx(0.99 * extinction_probability(p)).epsilon(1e-9));
  }
  // Closed form for k = 1, rho > 1: e^{(rho-1) t} = (rho - 0.99) / (0.01 rho).
  const double rho = 2.394;
  CHECK(validity_horizon(with_rho(rho, 1.0, 1)) ==
        doctest::Approx(std::log((rho - 0.99) / (0.01 * rho)) / (rho - 1.0)).epsilon(1e-9));
}
