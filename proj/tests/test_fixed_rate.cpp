#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "swarm/error.hpp"
#include "swarm/fixed_rate.hpp"

using namespace swarm;

TEST_CASE("terminal fraction and stop time") {
  const FixedRateMeanField p{0.5, 1.0, 0.8};
  CHECK(terminal_uninfected_fraction(p) == doctest::Approx(0.64).epsilon(1e-14));
  CHECK(stop_time(p) == doctest::Approx(0.36).epsilon(1e-13));
  CHECK(scaled_trajectory(p, stop_time(p)).y == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
  CHECK(terminal_uninfected_fraction({2.0, 1.0, 0.8}) == 0.0);
  CHECK(stop_time({2.0, 0.5, 0.8}) == doctest::Approx(2.0));
  CHECK(stop_time({0.5, 2.0, 0.8}) == doctest::Approx(0.18));
}

TEST_CASE("trajectory solves the time-changed equations") {
  // With y-slowed time: x' = -xi mu x / (1 - mu t), y' = -mu - x'.
  for (double xi : {0.3, 0.8, 1.5, 3.0}) {
    const FixedRateMeanField p{xi, 1.0, 0.7};
    const double t_end = 0.5 * stop_time(p);
    const auto s = oracle::rk4<3>(
        [&](const std::array<double, 3>& u) {
          const double dx = -xi * u[1] / (1.0 - u[2]);
          return std::array<double, 3>{-1.0 - dx, dx, 1.0};
        },
        {0.3, 0.7, 0.0}, t_end, 1e-5);
    const auto pt = scaled_trajectory(p, t_end);
    CHECK(pt.y == doctest::Approx(s[0]).epsilon(1e-9));
    CHECK(pt.x == doctest::Approx(s[1]).epsilon(1e-9));
  }
}

TEST_CASE("domain") {
  CHECK_THROWS_AS(scaled_trajectory({0.5, 1.0, 0.8}, 1.5), Error);
  CHECK_THROWS_AS(scaled_trajectory({0.5, 1.0, 0.8}, -0.1), Error);
  CHECK_THROWS_AS(validate(FixedRateMeanField{0.5, 1.0, 1.0}), Error);
  CHECK_THROWS_AS(validate(FixedRateMeanField{0.0, 1.0, 0.5}), Error);
  const auto end = scaled_trajectory({0.5, 1.0, 0.8}, 1.0);
  CHECK(end.x == 0.0);
  CHECK(end.y == 0.0);
}

TEST_CASE("maximum torrent size") {
  const auto m = max_torrent({2.0, 1.0, 0.8});
  CHECK(m.y_max == doctest::Approx(0.3125).epsilon(1e-14));
  CHECK(m.t_peak == doctest::Approx(0.375).epsilon(1e-14));
  // Algebraic form of the same maximum.
  const double xi = 3.0, x0 = 0.6;
  CHECK(max_torrent({xi, 1.0, x0}).y_max ==
        doctest::Approx(std::pow(x0, 1 / (1 - xi)) * std::pow(xi, xi / (1 - xi)) * (xi - 1))
            .epsilon(1e-13));

  const auto flat = max_torrent({1.2, 1.0, 0.8});
  CHECK(flat.y_max == doctest::Approx(0.2));
  CHECK(flat.t_peak == 0.0);

  SUBCASE("agrees with a dense scan of the trajectory") {
    for (double x : {0.3, 0.6, 0.9}) {
      for (double k : {0.5, 1.0, 1.6, 2.5, 6.0}) {
        const FixedRateMeanField p{k, 1.0, x};
        double best = 0.0;
        for (int i = 0; i <= 200000; ++i) best = std::max(best, scaled_trajectory(p, i / 200000.0).y);
        CHECK(max_torrent(p).y_max == doctest::Approx(best).epsilon(1e-8));
      }
    }
  }

  SUBCASE("continuous at the threshold") {
    const double x0 = 0.8;
    const double t = 1.0 / x0;
    CHECK(std::abs(max_torrent({t * (1 + 1e-12), 1.0, x0}).y_max - (1 - x0)) < 1e-9);
  }
}

TEST_CASE("phase diagram sweep") {
  const auto rows = sweep_phase_diagram(0.8, {0.2, 0.5, 0.9, 1.1, 2.0});
  REQUIRE(rows.size() == 5);
  CHECK(rows[1].terminal_fraction == doctest::Approx(0.64));
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i].terminal_fraction <= rows[i - 1].terminal_fraction);
    CHECK(rows[i].tau >= rows[i - 1].tau);
  }
  CHECK(rows[3].terminal_fraction == 0.0);
  CHECK(rows[4].y_max == doctest::Approx(0.3125));
  CHECK_THROWS_AS(sweep_phase_diagram(0.8, {1.0, 0.5}), Error);
}
