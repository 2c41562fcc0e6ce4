#include "swarm/meanfield.hpp"

#include <algorithm>
#include <cmath>

#include "ode.hpp"
#include "roots.hpp"
#include "swarm/error.hpp"

namespace swarm {
namespace {

constexpr double kFractionTolerance = 1e-9;
constexpr double kAbsorbedY = 1e-14;

}  // namespace

double MeanFieldParams::phi() const { return xc0 + y0 - std::log(xc0) / theta(); }

MeanFieldParams validate(const MeanFieldParams& p) {
  if (!std::isfinite(p.beta) || p.beta <= 0.0)
    throw Error(ErrorCode::invalid_rate, "beta must be positive");
  if (!std::isfinite(p.mu) || p.mu < 0.0)
    throw Error(ErrorCode::invalid_rate, "mu must be non-negative");
  if (!(p.y0 > 0.0 && p.y0 <= 1.0) || p.xc0 < 0.0 || p.xf0 < 0.0)
    throw Error(ErrorCode::invalid_fractions, "need y0 in (0,1], xc0, xf0 >= 0");
  if (std::abs(p.y0 + p.xc0 + p.xf0 - 1.0) > kFractionTolerance)
    throw Error(ErrorCode::invalid_fractions, "y0 + xc0 + xf0 must equal 1");
  return p;
}

MeanFieldParams mean_field_from(const GeneralParams& p) {
  const double n = static_cast<double>(p.n_total);
  return validate(MeanFieldParams{p.lambda * n, p.mu, p.y0 / n, p.nc / n, p.nf / n});
}

double fully_coop_closed_form(double beta, double y0, double t) {
  if (!(y0 > 0.0 && y0 <= 1.0))
    throw Error(ErrorCode::invalid_fractions, "y0 must lie in (0, 1]");
  if (t < 0.0) throw Error(ErrorCode::negative_time, "t must be non-negative");
  return y0 / (y0 + (1.0 - y0) * std::exp(-beta * t));
}

std::vector<MeanFieldState> integrate_ode(const MeanFieldParams& params, double t_end,
                                          double dt) {
  const auto p = validate(params);
  if (!(dt > 0.0) || t_end < 0.0)
    throw Error(ErrorCode::invalid_argument, "need dt > 0 and t_end >= 0");

  using Integrator = detail::DenseIntegrator<3>;
  const double beta = p.beta;
  const double mu = p.mu;
  Integrator ode(
      [beta, mu](const Integrator::State& s, Integrator::State& ds, double) {
        ds[0] = s[0] * (beta * s[1] - mu);
        ds[1] = -beta * s[0] * s[1];
        ds[2] = -beta * s[0] * s[2];
      },
      {p.y0, p.xc0, p.xf0}, 0.0, std::min(dt, 1e-3 / (beta + mu)));

  const auto steps = static_cast<std::size_t>(std::floor(t_end / dt + 1e-9));
  std::vector<MeanFieldState> path;
  path.reserve(steps + 1);
  path.push_back({0.0, p.y0, p.xc0, p.xf0});
  for (std::size_t i = 1; i <= steps; ++i) {
    const double t = static_cast<double>(i) * dt;
    const auto s = ode.at(t);
    path.push_back({t, s[0], s[1], s[2]});
    if (s[0] < kAbsorbedY) break;
  }
  return path;
}

double conserved_quantity(const MeanFieldState& state, const MeanFieldParams& p) {
  if (!(state.xc > 0.0))
    throw Error(ErrorCode::non_positive_xc, "conserved quantity needs xc > 0");
  return state.xc + state.y - std::log(state.xc) / p.theta();
}

PeakFraction peak_fraction(const MeanFieldParams& params) {
  const auto p = validate(params);
  if (p.mu <= 0.0) throw Error(ErrorCode::division_by_zero, "peak needs mu > 0");
  const double theta = p.theta();
  if (theta * p.xc0 <= 1.0) return {p.y0, p.xc0};
  return {-(1.0 + std::log(theta)) / theta + p.phi(), 1.0 / theta};
}

TerminalFractions terminal_uninfected(const MeanFieldParams& params) {
  const auto p = validate(params);
  if (p.mu <= 0.0)
    throw Error(ErrorCode::division_by_zero, "terminal fractions need mu > 0");
  if (p.xc0 == 0.0) {
    // Only free riders wait; they see the same exposure as in the time-changed
    // system: xf(inf) = xf0 e^{-beta tau} with tau = y0/mu.
    return {0.0, p.xf0 * std::exp(-p.beta * terminal_time(p))};
  }
  const double theta = p.theta();
  const double phi = p.phi();
  // Solve in u = ln x: g(u) = e^u - u/theta - phi. g(ln xc0) = -y0 < 0 and
  // g(-theta (phi + 1)) > 0. The root is unique below min(xc0, 1/theta).
  auto g = [&](double u) { return std::exp(u) - u / theta - phi; };
  const double u_hi = std::min(std::log(p.xc0), -std::log(theta));
  const double u_lo = -theta * (phi + 1.0);
  // Absolute tolerance 1e-12 on x = e^u translates to 1e-12 / x on u; the
  // bracket in u is refined far enough for either.
  const double u = detail::bisect(g, u_lo, u_hi, 1e-14);
  const double xc = std::exp(u);
  return {xc, p.xf0 * xc / p.xc0};
}

double terminal_time(const MeanFieldParams& params) {
  const auto p = validate(params);
  if (p.mu <= 0.0) throw Error(ErrorCode::division_by_zero, "terminal time needs mu > 0");
  auto f = [&](double tau) {
    return p.xc0 * std::exp(-p.beta * tau) + p.mu * tau - p.xc0 - p.y0;
  };
  const double hi = (p.xc0 + p.y0) / p.mu + 1.0 / p.beta;
  return detail::bisect(f, 0.0, hi, 1e-12 * std::max(1.0, hi));
}

double phase_transition_theta(double xc0) {
  if (!(xc0 > 0.0 && xc0 <= 1.0))
    throw Error(ErrorCode::invalid_fractions, "xc0 must lie in (0, 1]");
  return 1.0 / xc0;
}

std::vector<PhaseSweepRow> phase_sweep(double y0, double xc0,
                                       const std::vector<double>& theta_xc0_grid) {
  std::vector<PhaseSweepRow> rows;
  rows.reserve(theta_xc0_grid.size());
  for (double txc : theta_xc0_grid) {
    const auto p = validate(
        MeanFieldParams{txc / xc0, 1.0, y0, xc0, std::max(0.0, 1.0 - y0 - xc0)});
    const auto terminal = terminal_uninfected(p);
    rows.push_back({txc, terminal.xc, terminal.xf, peak_fraction(p).y_max,
                    terminal_time(p)});
  }
  return rows;
}

}  // namespace swarm
