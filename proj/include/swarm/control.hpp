#pragma once

#include <vector>

#include "swarm/model.hpp"

namespace swarm {

/// Mean-field state of the investment model; `exposure` is
/// I(t) = integral of (y + y*) over [0, t].
struct ControlState {
  double t = 0.0;
  double y = 0.0;
  double x = 0.0;
  double exposure = 0.0;
};

/// y' = beta (y + y*) x - mu(alpha) y,  x' = -beta (y + y*) x, sampled on the
/// grid 0, dt, ..., t_end.
std::vector<ControlState> integrate_control_ode(const ControlParams& p, double t_end,
                                                double dt);

/// Mean delay before a peer without the file obtains it in the large-N limit,
///   T(alpha) = integral over [0, inf) of exp(-beta I(t)).
/// Integrated alongside the ODE until exp(-beta I) < 1e-12; the remainder is
/// bounded by exp(-beta I(T*)) / (beta y*) and that bound is added.
double expected_delay(const ControlParams& p);

/// time_value * T(alpha) - alpha.
double utility(const ControlParams& p);

/// 1 - exp(-beta I(t)) at each (non-decreasing) time.
std::vector<double> acquisition_cdf(const ControlParams& p, const std::vector<double>& times);
double acquisition_cdf(const ControlParams& p, double t);

struct DelayPoint {
  double alpha = 0.0;
  double t_bar = 0.0;
  double h = 0.0;
  /// beta / mu(alpha); +inf at mu(alpha) = 0.
  double beta_over_mu_alpha = 0.0;
};

/// Strictly increasing alpha grid required.
std::vector<DelayPoint> delay_curve(const ControlParams& p_template,
                                    const std::vector<double>& alpha_grid);

enum class OptimumKind { interior, at_lower_bound, at_upper_bound, degenerate_range };

struct AlphaOptimum {
  double alpha = 0.0;
  double h = 0.0;
  OptimumKind kind = OptimumKind::interior;

  bool interior() const { return kind == OptimumKind::interior; }
};

/// Coarse scan on 32 equispaced points of [lo, hi], then golden-section
/// refinement around the best grid point to 1e-4 in alpha. A best grid point
/// at either end of the range is reported as such (no interior maximum).
AlphaOptimum optimize_alpha(const ControlParams& p_template, double lo, double hi);

}  // namespace swarm
