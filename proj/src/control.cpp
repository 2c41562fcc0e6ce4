#include "swarm/control.hpp"

#include <cmath>
#include <limits>

#include "ode.hpp"
#include "swarm/error.hpp"

namespace swarm {
namespace {

// ln(1e12): exp(-beta I) falls below 1e-12 beyond this exposure.
constexpr double kExposureCutoff = 27.631021115928547;

using Integrator = detail::DenseIntegrator<4>;

/// State (y, x, I, J) with J' = exp(-beta I) accumulating the delay integral.
Integrator make_integrator(const ControlParams& p) {
  const double beta = p.beta;
  const double mu = p.departure_rate();
  const double ys = p.y_star;
  return Integrator(
      [beta, mu, ys](const Integrator::State& s, Integrator::State& ds, double) {
        const double contact = beta * (s[0] + ys) * s[1];
        ds[0] = contact - mu * s[0];
        ds[1] = -contact;
        ds[2] = s[0] + ys;
        ds[3] = std::exp(-beta * s[2]);
      },
      {p.y0, p.x0, 0.0, 0.0}, 0.0, 1e-3 / (beta + mu));
}

ControlParams with_alpha(ControlParams p, double alpha) {
  p.alpha = alpha;
  return validate(p);
}

}  // namespace

std::vector<ControlState> integrate_control_ode(const ControlParams& params, double t_end,
                                                double dt) {
  const auto p = validate(params);
  if (!(dt > 0.0) || t_end < 0.0)
    throw Error(ErrorCode::invalid_argument, "need dt > 0 and t_end >= 0");
  auto ode = make_integrator(p);
  const auto steps = static_cast<std::size_t>(std::floor(t_end / dt + 1e-9));
  std::vector<ControlState> path;
  path.reserve(steps + 1);
  path.push_back({0.0, p.y0, p.x0, 0.0});
  for (std::size_t i = 1; i <= steps; ++i) {
    const double t = static_cast<double>(i) * dt;
    const auto s = ode.at(t);
    path.push_back({t, s[0], s[1], s[2]});
  }
  return path;
}

double expected_delay(const ControlParams& params) {
  const auto p = validate(params);
  auto ode = make_integrator(p);
  while (p.beta * ode.state()[2] < kExposureCutoff) ode.step();
  const auto& s = ode.state();
  return s[3] + std::exp(-p.beta * s[2]) / (p.beta * p.y_star);
}

double utility(const ControlParams& params) {
  const auto p = validate(params);
  return p.time_value * expected_delay(p) - p.alpha;
}

std::vector<double> acquisition_cdf(const ControlParams& params,
                                    const std::vector<double>& times) {
  const auto p = validate(params);
  auto ode = make_integrator(p);
  std::vector<double> out;
  out.reserve(times.size());
  double last = 0.0;
  for (double t : times) {
    if (t < 0.0) throw Error(ErrorCode::negative_time, "t must be non-negative");
    if (t < last) throw Error(ErrorCode::invalid_argument, "times must be non-decreasing");
    last = t;
    const double exposure = t == 0.0 ? 0.0 : ode.at(t)[2];
    out.push_back(-std::expm1(-p.beta * exposure));
  }
  return out;
}

double acquisition_cdf(const ControlParams& p, double t) {
  return acquisition_cdf(p, std::vector<double>{t}).front();
}

std::vector<DelayPoint> delay_curve(const ControlParams& p_template,
                                    const std::vector<double>& alpha_grid) {
  std::vector<DelayPoint> curve;
  curve.reserve(alpha_grid.size());
  for (std::size_t i = 0; i < alpha_grid.size(); ++i) {
    if (i > 0 && !(alpha_grid[i] > alpha_grid[i - 1]))
      throw Error(ErrorCode::invalid_argument, "alpha grid must be strictly increasing");
    const auto p = with_alpha(p_template, alpha_grid[i]);
    const double t_bar = expected_delay(p);
    const double mu = p.departure_rate();
    curve.push_back({p.alpha, t_bar, p.time_value * t_bar - p.alpha,
                     mu > 0.0 ? p.beta / mu : std::numeric_limits<double>::infinity()});
  }
  return curve;
}

AlphaOptimum optimize_alpha(const ControlParams& p_template, double lo, double hi) {
  if (!(lo >= 0.0) || !(hi >= lo))
    throw Error(ErrorCode::invalid_argument, "alpha range must satisfy 0 <= lo <= hi");
  auto h = [&](double a) { return utility(with_alpha(p_template, a)); };
  if (hi == lo) return {lo, h(lo), OptimumKind::degenerate_range};

  constexpr int kGrid = 32;
  std::vector<double> grid(kGrid), values(kGrid);
  int best = 0;
  for (int i = 0; i < kGrid; ++i) {
    grid[i] = lo + (hi - lo) * i / (kGrid - 1);
    values[i] = h(grid[i]);
    if (values[i] > values[best]) best = i;
  }
  if (best == 0) return {lo, values[0], OptimumKind::at_lower_bound};
  if (best == kGrid - 1) return {hi, values[kGrid - 1], OptimumKind::at_upper_bound};

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = grid[best - 1];
  double b = grid[best + 1];
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double hc = h(c);
  double hd = h(d);
  while (b - a > 1e-4) {
    if (hc > hd) {
      b = d;
      d = c;
      hd = hc;
      c = b - inv_phi * (b - a);
      hc = h(c);
    } else {
      a = c;
      c = d;
      hc = hd;
      d = a + inv_phi * (b - a);
      hd = h(d);
    }
  }
  double alpha = 0.5 * (a + b);
  double value = h(alpha);
  if (values[best] > value) {
    alpha = grid[best];
    value = values[best];
  }
  return {alpha, value, OptimumKind::interior};
}

}  // namespace swarm
