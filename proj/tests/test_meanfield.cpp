#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "swarm/error.hpp"
#include "swarm/meanfield.hpp"

using namespace swarm;

namespace {

MeanFieldParams theta2() { return {2.0, 1.0, 0.05, 0.95, 0.0}; }

std::array<double, 3> rhs(const MeanFieldParams& p, const std::array<double, 3>& s) {
  return {s[0] * (p.beta * s[1] - p.mu), -p.beta * s[0] * s[1], -p.beta * s[0] * s[2]};
}

}  // namespace

TEST_CASE("first integral") {
  CHECK(theta2().phi() == doctest::Approx(1.02564664719378).epsilon(1e-13));
  MeanFieldParams p = theta2();
  p.beta = 1.0;
  CHECK(p.phi() == doctest::Approx(1.05129329438755).epsilon(1e-13));
  CHECK_THROWS_AS(conserved_quantity({0.0, 0.1, 0.0, 0.0}, p), Error);
}

TEST_CASE("validation") {
  CHECK_THROWS_AS(validate(MeanFieldParams{1.0, 1.0, 0.5, 0.6, 0.0}), Error);
  CHECK_THROWS_AS(validate(MeanFieldParams{-1.0, 1.0, 0.1, 0.9, 0.0}), Error);
  CHECK_NOTHROW(validate(MeanFieldParams{1.0, 1.0, 0.1, 0.5, 0.4}));
}

TEST_CASE("mapping from the finite model") {
  const GeneralParams g{300, 0.005, 0.5, 10, 140, 150};
  const auto m = mean_field_from(g);
  CHECK(m.beta == doctest::Approx(1.5));
  CHECK(m.y0 == doctest::Approx(10.0 / 300));
  CHECK(m.xc0 == doctest::Approx(140.0 / 300));
  CHECK(m.xf0 == doctest::Approx(0.5));
}

TEST_CASE("integration against an independent RK4") {
  for (const MeanFieldParams p :
       {theta2(), MeanFieldParams{3.0, 1.0, 0.02, 0.5, 0.48}, MeanFieldParams{0.8, 1.0, 0.1, 0.9, 0.0}}) {
    const auto path = integrate_ode(p, 10.0, 0.5);
    REQUIRE(path.size() == 21);
    for (std::size_t i = 1; i < path.size(); i += 4) {
      const auto ref = oracle::rk4<3>([&](const auto& s) { return rhs(p, s); },
                                      {p.y0, p.xc0, p.xf0}, path[i].t, 1e-4);
      CHECK(path[i].y == doctest::Approx(ref[0]).epsilon(1e-8));
      CHECK(path[i].xc == doctest::Approx(ref[1]).epsilon(1e-8));
      CHECK(path[i].xf == doctest::Approx(ref[2]).epsilon(1e-8));
    }
  }
}

TEST_CASE("trajectory invariants") {
  const MeanFieldParams p{2.5, 1.0, 0.03, 0.6, 0.37};
  const auto path = integrate_ode(p, 30.0, 0.05);
  const double phi = p.phi();
  double prev_xc = p.xc0;
  for (const auto& s : path) {
    CHECK(std::abs(conserved_quantity(s, p) - phi) <= 1e-8);
    CHECK(s.y >= 0.0);
    CHECK(s.xc <= prev_xc + 1e-15);
    CHECK(s.y + s.xc + s.xf <= 1.0 + 1e-12);
    // Free riders and cooperative peers are hit at the same per-capita rate.
    CHECK(s.xf / p.xf0 == doctest::Approx(s.xc / p.xc0).epsilon(1e-9));
    prev_xc = s.xc;
  }
}

TEST_CASE("fully cooperative closed form") {
  const MeanFieldParams p{1.7, 0.0, 0.01, 0.99, 0.0};
  for (double t : {0.0, 0.5, 2.0, 6.0}) {
    const double y = fully_coop_closed_form(1.7, 0.01, t);
    CHECK(y == doctest::Approx(0.01 / (0.01 + 0.99 * std::exp(-1.7 * t))).epsilon(1e-15));
  }
  const auto path = integrate_ode(p, 6.0, 0.25);
  for (const auto& s : path)
    CHECK(s.y == doctest::Approx(fully_coop_closed_form(1.7, 0.01, s.t)).epsilon(1e-8));
}

TEST_CASE("peak fraction") {
  const auto peak = peak_fraction(theta2());
  CHECK(peak.y_max == doctest::Approx(0.179073056913803).epsilon(1e-11));
  CHECK(peak.xc_at_peak == doctest::Approx(0.5));
  const auto path = integrate_ode(theta2(), 20.0, 1e-3);
  const auto top = std::max_element(path.begin(), path.end(),
                                    [](const auto& a, const auto& b) { return a.y < b.y; });
  CHECK(top->y == doctest::Approx(peak.y_max).epsilon(1e-6));

  // Below the transition the fraction of holders only decreases.
  const MeanFieldParams sub{0.9, 1.0, 0.05, 0.95, 0.0};
  CHECK(peak_fraction(sub).y_max == 0.05);
  const auto sub_path = integrate_ode(sub, 5.0, 0.01);
  for (const auto& s : sub_path) CHECK(s.y <= 0.05 + 1e-15);
}

TEST_CASE("terminal fractions") {
  const auto term = terminal_uninfected(theta2());
  CHECK(term.xc == doctest::Approx(0.186806995904870).epsilon(1e-11));
  CHECK(term.xf == 0.0);
  const MeanFieldParams p = theta2();
  CHECK(term.xc - std::log(term.xc) / p.theta() == doctest::Approx(p.phi()).epsilon(1e-13));

  const double tau = terminal_time(p);
  CHECK(tau == doctest::Approx(0.813193004095130).epsilon(1e-11));
  CHECK(p.xc0 * std::exp(-p.beta * tau) == doctest::Approx(term.xc).epsilon(1e-10));

  SUBCASE("long-time ODE limit") {
    for (const MeanFieldParams q :
         {theta2(), MeanFieldParams{1.2, 1.0, 0.02, 0.4, 0.58}, MeanFieldParams{4.0, 2.0, 0.1, 0.3, 0.6}}) {
      const auto path = integrate_ode(q, 400.0, 400.0);
      const auto t = terminal_uninfected(q);
      CHECK(path.back().xc == doctest::Approx(t.xc).epsilon(1e-7));
      CHECK(path.back().xf == doctest::Approx(t.xf).epsilon(1e-7));
    }
  }

  SUBCASE("no cooperative peers left to serve") {
    const MeanFieldParams q{2.0, 1.0, 0.1, 0.0, 0.9};
    const auto t = terminal_uninfected(q);
    CHECK(t.xc == 0.0);
    // y decays as 0.1 e^{-t}; xf = 0.9 exp(-0.2 (1 - e^{-t})).
    CHECK(t.xf == doctest::Approx(0.9 * std::exp(-0.2)).epsilon(1e-10));
  }
}

TEST_CASE("phase transition") {
  CHECK(phase_transition_theta(0.95) == doctest::Approx(1.0 / 0.95));
  const auto rows = phase_sweep(0.05, 0.95, {0.5, 0.9, 1.0, 1.1, 2.0, 4.0});
  REQUIRE(rows.size() == 6);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].theta_xc0 <= 1.0) CHECK(rows[i].y_max == 0.05);
    else CHECK(rows[i].y_max > 0.05);
    if (i > 0) {
      CHECK(rows[i].xc_inf < rows[i - 1].xc_inf);
      CHECK(rows[i].y_max >= rows[i - 1].y_max);
    }
    CHECK(rows[i].xf_inf == 0.0);
  }
}
