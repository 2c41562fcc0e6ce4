#include "swarm/fixed_rate.hpp"

#include <cmath>

#include "swarm/error.hpp"

namespace swarm {

FixedRateMeanField validate(const FixedRateMeanField& p) {
  if (!std::isfinite(p.xi) || p.xi <= 0.0)
    throw Error(ErrorCode::invalid_rate, "xi must be positive");
  if (!std::isfinite(p.mu) || p.mu <= 0.0)
    throw Error(ErrorCode::invalid_rate, "mu must be positive");
  if (!(p.x0 > 0.0 && p.x0 < 1.0))
    throw Error(ErrorCode::invalid_fractions, "need 0 < y0 < 1, i.e. x0 in (0, 1)");
  return p;
}

FixedRateMeanField fixed_rate_mean_field_from(const FixedRateParams& params) {
  const auto p = validate(params);
  return validate(FixedRateMeanField{
      p.xi(), p.mu, static_cast<double>(p.x0()) / static_cast<double>(p.n_total)});
}

ScaledPoint scaled_trajectory(const FixedRateMeanField& params, double t) {
  const auto p = validate(params);
  if (t < 0.0) throw Error(ErrorCode::negative_time, "t must be non-negative");
  if (t > 1.0 / p.mu) throw Error(ErrorCode::time_out_of_range, "t must not exceed 1/mu");
  const double s = std::max(0.0, 1.0 - p.mu * t);
  const double x = p.x0 * std::pow(s, p.xi);
  return {s - x, x};
}

double stop_time(const FixedRateMeanField& params) {
  const auto p = validate(params);
  if (p.xi >= 1.0) return 1.0 / p.mu;
  return -std::expm1(std::log(p.x0) / (1.0 - p.xi)) / p.mu;
}

double terminal_uninfected_fraction(const FixedRateMeanField& params) {
  const auto p = validate(params);
  if (p.xi >= 1.0) return 0.0;
  return std::exp(std::log(p.x0) / (1.0 - p.xi));
}

MaxTorrent max_torrent(const FixedRateMeanField& params) {
  const auto p = validate(params);
  if (p.xi <= 1.0 / p.x0) return {1.0 - p.x0, 0.0};
  // s* = (xi x0)^{1/(1-xi)} and y(s*) = s* (xi - 1)/xi, which expands to
  // x0^{1/(1-xi)} xi^{xi/(1-xi)} (xi - 1).
  const double log_s = std::log(p.xi * p.x0) / (1.0 - p.xi);
  const double s = std::exp(log_s);
  return {s * (p.xi - 1.0) / p.xi, -std::expm1(log_s) / p.mu};
}

std::vector<FixedRateSweepRow> sweep_phase_diagram(double x0, const std::vector<double>& xi_grid,
                                                   double mu) {
  std::vector<FixedRateSweepRow> rows;
  rows.reserve(xi_grid.size());
  for (std::size_t i = 0; i < xi_grid.size(); ++i) {
    if (i > 0 && xi_grid[i] < xi_grid[i - 1])
      throw Error(ErrorCode::invalid_argument, "xi grid must be sorted");
    const auto p = validate(FixedRateMeanField{xi_grid[i], mu, x0});
    const auto peak = max_torrent(p);
    rows.push_back({p.xi, x0, terminal_uninfected_fraction(p), peak.y_max, peak.t_peak,
                    stop_time(p)});
  }
  return rows;
}

}  // namespace swarm
