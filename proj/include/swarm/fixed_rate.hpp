#pragma once

#include <vector>

#include "swarm/model.hpp"

namespace swarm {

/// Large-N limit of the fixed request-rate model on the time scale slowed by
/// the number of holders (same terminal values and peak as the original).
struct FixedRateMeanField {
  double xi = 0.0;
  double mu = 1.0;
  double x0 = 0.0;

  double y0() const { return 1.0 - x0; }
};

FixedRateMeanField validate(const FixedRateMeanField& p);
FixedRateMeanField fixed_rate_mean_field_from(const FixedRateParams& p);

struct ScaledPoint {
  double y = 0.0;
  double x = 0.0;
};

/// x = x0 (1 - mu t)^xi and y = (1 - mu t) - x on [0, 1/mu]. Beyond the stop
/// time y turns negative when xi < 1; only [0, stop_time] is physical.
ScaledPoint scaled_trajectory(const FixedRateMeanField& p, double t);

/// First zero of y on [0, 1/mu].
double stop_time(const FixedRateMeanField& p);

/// x0^{1/(1-xi)} for xi < 1, otherwise 0.
double terminal_uninfected_fraction(const FixedRateMeanField& p);

struct MaxTorrent {
  double y_max = 0.0;
  double t_peak = 0.0;
};

/// (1 - x0, 0) while xi <= 1/x0; beyond, the interior maximum reached at
/// 1 - mu t = (xi x0)^{1/(1-xi)}.
MaxTorrent max_torrent(const FixedRateMeanField& p);

struct FixedRateSweepRow {
  double xi = 0.0;
  double x0 = 0.0;
  double terminal_fraction = 0.0;
  double y_max = 0.0;
  double t_peak = 0.0;
  double tau = 0.0;
};

/// xi_grid must be positive and sorted ascending.
std::vector<FixedRateSweepRow> sweep_phase_diagram(double x0, const std::vector<double>& xi_grid,
                                                   double mu = 1.0);

}  // namespace swarm
