#pragma once

#include <vector>

#include "swarm/model.hpp"

namespace swarm {

/// Fluid limit of the free-rider epidemic, all quantities as fractions of N.
struct MeanFieldParams {
  double beta = 0.0;
  double mu = 0.0;
  double y0 = 0.0;
  double xc0 = 0.0;
  double xf0 = 0.0;

  double theta() const { return beta / mu; }
  /// phi(theta) = xc0 + y0 - ln(xc0)/theta, the value of the first integral.
  double phi() const;
};

MeanFieldParams validate(const MeanFieldParams& p);

/// beta = lambda*N and the initial fractions of a finite-N parameter set.
MeanFieldParams mean_field_from(const GeneralParams& p);

/// Logistic solution y0 / (y0 + (1-y0) e^{-beta t}) of the fully cooperative
/// mean-field equation.
double fully_coop_closed_form(double beta, double y0, double t);

/// Samples on the grid 0, dt, 2dt, ... up to t_end of
///   y' = y(beta xc - mu),  xc' = -beta y xc,  xf' = -beta y xf,
/// integrated with an embedded Dormand-Prince 5(4) pair under error control.
/// The path is cut at the first grid point after y drops below 1e-14.
std::vector<MeanFieldState> integrate_ode(const MeanFieldParams& p, double t_end,
                                          double dt);

/// xc + y - ln(xc)/theta, constant along exact trajectories.
double conserved_quantity(const MeanFieldState& state, const MeanFieldParams& p);

struct PeakFraction {
  double y_max = 0.0;
  double xc_at_peak = 0.0;
};

/// Peak of y. Interior (at xc = 1/theta) only when theta * xc0 > 1; otherwise
/// the maximum is the initial value.
PeakFraction peak_fraction(const MeanFieldParams& p);

struct TerminalFractions {
  double xc = 0.0;
  double xf = 0.0;
};

/// Fractions of cooperative peers and free riders never served: the root of
/// x - ln(x)/theta - phi on (0, xc0), with xf proportional to xc.
TerminalFractions terminal_uninfected(const MeanFieldParams& p);

/// Root in (0, inf) of xc0 + y0 = xc0 e^{-beta tau} + mu tau: the absorption
/// time of the time-changed system (clock slowed by y).
double terminal_time(const MeanFieldParams& p);

/// theta * xc0 = 1.
double phase_transition_theta(double xc0);

struct PhaseSweepRow {
  double theta_xc0 = 0.0;
  double xc_inf = 0.0;
  double xf_inf = 0.0;
  double y_max = 0.0;
  double tau = 0.0;
};

/// Terminal and peak quantities along a grid of theta*xc0 values (mu = 1).
std::vector<PhaseSweepRow> phase_sweep(double y0, double xc0,
                                       const std::vector<double>& theta_xc0_grid);

}  // namespace swarm
