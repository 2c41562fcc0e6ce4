#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <vector>

#include "swarm/error.hpp"
#include "swarm/exact.hpp"

using namespace swarm;

namespace {

using Key = std::array<Count, 3>;

// Forward Kolmogorov equations integrated with fixed-step RK4; returns the
// probability mass on y = 0 at each time.
std::vector<double> forward_absorbed(const GeneralParams& p, const std::vector<double>& times) {
  std::map<Key, std::size_t> idx;
  std::vector<Key> states;
  for (Count y = 0; y <= p.n_total; ++y)
    for (Count xc = 0; xc <= p.nc; ++xc)
      for (Count xf = 0; xf <= p.nf; ++xf)
        if (y + xc + xf <= p.n_total) {
          idx[{y, xc, xf}] = states.size();
          states.push_back({y, xc, xf});
        }
  const std::size_t n = states.size();
  auto deriv = [&](const std::vector<double>& v) {
    std::vector<double> d(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const auto [y, xc, xf] = states[i];
      if (y == 0 || v[i] == 0.0) continue;
      auto flow = [&](Key to, double rate) {
        if (rate <= 0.0) return;
        d[i] -= rate * v[i];
        d[idx.at(to)] += rate * v[i];
      };
      flow({y + 1, xc - 1, xf}, p.lambda * y * xc);
      flow({y - 1, xc, xf}, p.mu * y);
      flow({y, xc, xf - 1}, p.lambda * y * xf);
    }
    return d;
  };
  std::vector<double> v(n, 0.0);
  v[idx.at({p.y0, p.nc, p.nf})] = 1.0;
  std::vector<double> out;
  double t = 0.0;
  const double h = 1e-3;
  for (double target : times) {
    while (t < target - 1e-12) {
      const double step = std::min(h, target - t);
      auto add = [&](const std::vector<double>& a, const std::vector<double>& b, double c) {
        std::vector<double> r(n);
        for (std::size_t i = 0; i < n; ++i) r[i] = a[i] + c * b[i];
        return r;
      };
      const auto k1 = deriv(v);
      const auto k2 = deriv(add(v, k1, step / 2));
      const auto k3 = deriv(add(v, k2, step / 2));
      const auto k4 = deriv(add(v, k3, step));
      for (std::size_t i = 0; i < n; ++i) v[i] += step / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
      t += step;
    }
    double mass = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      if (states[i][0] == 0) mass += v[i];
    out.push_back(mass);
  }
  return out;
}

}  // namespace

TEST_CASE("terminal law for three peers by hand") {
  const GeneralParams p{3, 1.0, 1.0, 1, 1, 1};
  const auto r = exact_small_n(p, std::vector<double>{});
  REQUIRE(r.terminal.size() == 4);
  CHECK(r.terminal.at({1, 1}) == doctest::Approx(1.0 / 3).epsilon(1e-13));
  CHECK(r.terminal.at({1, 0}) == doctest::Approx(1.0 / 6).epsilon(1e-13));
  CHECK(r.terminal.at({0, 1}) == doctest::Approx(1.0 / 12).epsilon(1e-13));
  CHECK(r.terminal.at({0, 0}) == doctest::Approx(5.0 / 12).epsilon(1e-13));
}

TEST_CASE("pure death") {
  const std::vector<double> times{0.0, 0.1, 1.0, 3.0};
  const auto r = exact_small_n({2, 1.0, 0.7, 2, 0, 0}, times);
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double one = -std::expm1(-0.7 * times[i]);
    CHECK(r.extinction_cdf[i] == doctest::Approx(one * one).epsilon(1e-9));
  }
  CHECK(r.terminal.at({0, 0}) == doctest::Approx(1.0));
}

TEST_CASE("transient law matches the forward equations") {
  const std::vector<double> times{0.0, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0};
  for (const GeneralParams p : {GeneralParams{5, 1.0, 1.0, 1, 3, 1}, GeneralParams{6, 0.4, 0.8, 2, 2, 2},
                                GeneralParams{4, 2.0, 0.5, 1, 3, 0}}) {
    const auto r = exact_small_n(p, times);
    const auto ref = forward_absorbed(p, times);
    for (std::size_t i = 0; i < times.size(); ++i)
      CHECK(r.extinction_cdf[i] == doctest::Approx(ref[i]).epsilon(1e-8).scale(1.0));
    double total = 0.0;
    for (const auto& [k, v] : r.terminal) {
      CHECK(v >= 0.0);
      CHECK(k.first <= p.nc);
      CHECK(k.second <= p.nf);
      total += v;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("limits and errors") {
  const GeneralParams p{8, 1.0, 1.0, 1, 6, 1};
  const std::vector<double> late{200.0};
  CHECK(exact_small_n(p, late).extinction_cdf[0] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(exact_small_n(p, late).state_count > 10);
  CHECK_THROWS_AS(exact_small_n({9, 1.0, 1.0, 1, 7, 1}, late), Error);
  CHECK_THROWS_AS(exact_small_n({4, 1.0, 0.0, 1, 3, 0}, late), Error);
  CHECK_THROWS_AS(exact_small_n(p, std::vector<double>{-1.0}), Error);
  CHECK_THROWS_AS(exact_small_n(p, std::vector<double>{2.0, 1.0}), Error);
}
