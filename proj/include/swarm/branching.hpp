#pragma once

#include "swarm/model.hpp"

namespace swarm {

/// Linear birth-death process that replaces the shrinking pool of
/// cooperative downloaders by its initial size: every holder spawns a new
/// holder at rate lambda_nc and disappears at rate mu.
struct BranchingParams {
  double lambda_nc = 0.0;
  double mu = 0.0;
  Count k = 1;

  double rho() const { return lambda_nc / mu; }
  /// Per-object event rate u = lambda_nc + mu.
  double event_rate() const { return lambda_nc + mu; }
  double death_probability() const { return mu / event_rate(); }
  double birth_probability() const { return lambda_nc / event_rate(); }
};

BranchingParams validate(const BranchingParams& p);

/// Branching approximation of the general model started from y0 holders.
BranchingParams branching_from(const GeneralParams& p);

/// q_k = min(1, 1/rho)^k.
double extinction_probability(const BranchingParams& p);

/// G_k(t) = P(T_b(k) <= t). Exact at rho = 1 (selected when |rho-1| < 1e-9);
/// elsewhere evaluated through expm1 so that the removable singularity at
/// rho = 1 costs no precision.
double extinction_cdf(const BranchingParams& p, double t);

/// E[T_b(k)] for rho < 1. Closed form for k = 1, adaptive Gauss-Kronrod
/// quadrature of 1 - G_k(t) otherwise. Throws supercritical for rho >= 1.
double expected_extinction_time(const BranchingParams& p);

/// E[T_b(k) | extinction] for rho != 1. Conditioned on dying out, a
/// supercritical process behaves as the subcritical one with birth and death
/// rates swapped. Throws supercritical at rho = 1.
double conditional_extinction_time(const BranchingParams& p);

/// 1 - G_k(t): upper bound on P(T(k) > t) for the general model with Y(0)=k.
double survival_upper_bound(const BranchingParams& p, double t);

/// Earliest t at which G_k(t) reaches `fraction` of its limit q_k; used as the
/// horizon over which the branching approximation is compared to simulation.
double validity_horizon(const BranchingParams& p, double fraction = 0.99);

}  // namespace swarm
