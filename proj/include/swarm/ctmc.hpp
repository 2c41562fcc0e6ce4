#pragma once

#include <cstdint>
#include <limits>
#include <string_view>
#include <vector>

#include "swarm/branching.hpp"
#include "swarm/model.hpp"

namespace swarm {

enum class TerminalReason { absorbed_y_zero, all_served, time_limit };

std::string_view to_string(TerminalReason reason);

/// Per-path statistics, filled whether or not the path itself is kept.
struct PathSummary {
  /// Time of absorption (y = 0, or y = N in the fully cooperative model);
  /// +inf when the run hit its time limit first.
  double extinction_time = std::numeric_limits<double>::infinity();
  Count final_xc = 0;
  Count final_xf = 0;
  Count max_y = 0;
  double peak_time = 0.0;
  /// Number of infection/service events, i.e. peers that obtained the file.
  Count served = 0;
  Count served_cooperative = 0;
  TerminalReason reason = TerminalReason::time_limit;
};

template <class Params, class State>
struct Trajectory {
  Params params;
  std::uint64_t seed = 0;
  /// Initial state at t = 0 followed by one entry per transition.
  std::vector<State> events;
  TerminalReason terminal_reason = TerminalReason::time_limit;
  PathSummary summary;
};

using GeneralTrajectory = Trajectory<GeneralParams, GeneralState>;
using FixedRateTrajectory = Trajectory<FixedRateParams, FixedRateState>;

struct SimulationOptions {
  /// Non-positive means "use the default", 50 / mu (or +inf when mu = 0).
  double t_max = 0.0;
  bool record_path = true;
};

double default_t_max(double mu);

/// Exact (Gillespie) simulation of the free-rider epidemic. After the last
/// downloader is served the remaining holders leave one by one, so the run
/// always ends at y = 0 unless t_max intervenes.
GeneralTrajectory simulate_general(const GeneralParams& params, std::uint64_t seed,
                                   const SimulationOptions& options = {});

/// Pure-birth model (mu = 0, no free riders), absorbed when all N peers hold
/// the file.
GeneralTrajectory simulate_fully_cooperative(const GeneralParams& params,
                                             std::uint64_t seed,
                                             const SimulationOptions& options = {});

/// Fixed request-rate model; infection rate lambda*y*x/(y+x) (a peer may pick
/// itself).
FixedRateTrajectory simulate_fixed_rate(const FixedRateParams& params,
                                        std::uint64_t seed,
                                        const SimulationOptions& options = {});

/// Outcome of one run of the linear birth-death (branching) process.
struct BranchingRun {
  bool extinct = false;
  /// Extinction time, or the time the population first reached the cap.
  double time = 0.0;
  Count max_population = 0;
};

/// Simulates the branching process from p.k objects until extinction or until
/// the population reaches `cap` (treated as escape).
BranchingRun simulate_branching(const BranchingParams& p, std::uint64_t seed,
                                Count cap);

struct HybridOutcome {
  bool early_extinction = false;
  /// Time of early extinction, or of the switch to the mean-field phase.
  double time = 0.0;
  /// Counts at the switch (or at early extinction).
  Count xc_at_switch = 0;
  Count xf_at_switch = 0;
  /// Terminal fractions of N never served.
  double final_xc = 0.0;
  double final_xf = 0.0;
};

/// Branching phase (birth rate lambda*nc*y, death rate mu*y; free riders are
/// served at rate lambda*y*xf) until y = 0 or y = n0, then the mean-field
/// endgame from (n0, xc, xf)/N. Throws invalid_threshold unless y0 < n0 < N.
HybridOutcome simulate_hybrid(const GeneralParams& params, std::uint64_t seed,
                              Count n0);

/// Tagged-peer acquisition time in the finite-N control model: permanent
/// publishers Y* = round(y_star*N) never leave, non-permanent holders leave at
/// rate mu(alpha), contacts at rate beta/N. Returns +inf if the tagged peer is
/// still waiting at t_max.
double simulate_tagged_acquisition(const ControlParams& params, std::uint64_t seed,
                                   double t_max);

}  // namespace swarm
