#include "swarm/ctmc.hpp"

#include <cmath>

#include "swarm/error.hpp"
#include "swarm/meanfield.hpp"
#include "swarm/rng.hpp"

namespace swarm {
namespace {

double resolve_t_max(const SimulationOptions& options, double mu) {
  return options.t_max > 0.0 ? options.t_max : default_t_max(mu);
}

void note_peak(PathSummary& s, Count y, double t) {
  if (y > s.max_y) {
    s.max_y = y;
    s.peak_time = t;
  }
}

}  // namespace

std::string_view to_string(TerminalReason reason) {
  switch (reason) {
    case TerminalReason::absorbed_y_zero: return "absorbed_y_zero";
    case TerminalReason::all_served: return "all_served";
    case TerminalReason::time_limit: return "time_limit";
  }
  return "unknown";
}

double default_t_max(double mu) {
  return mu > 0.0 ? 50.0 / mu : std::numeric_limits<double>::infinity();
}

GeneralTrajectory simulate_general(const GeneralParams& params, std::uint64_t seed,
                                   const SimulationOptions& options) {
  GeneralTrajectory out{validate(params), seed, {}, TerminalReason::time_limit, {}};
  const auto& p = out.params;
  if (p.y0 < 1) throw Error(ErrorCode::invalid_counts, "simulation needs y0 >= 1");
  if (p.mu <= 0.0)
    throw Error(ErrorCode::invalid_rate,
                "general model needs mu > 0; use simulate_fully_cooperative");
  const double t_max = resolve_t_max(options, p.mu);

  Rng rng(seed);
  GeneralState s{0.0, p.y0, p.nc, p.nf};
  PathSummary& sum = out.summary;
  note_peak(sum, s.y, 0.0);
  if (options.record_path) out.events.push_back(s);

  while (s.y > 0) {
    const double y = static_cast<double>(s.y);
    const double serve_c = p.lambda * y * static_cast<double>(s.xc);
    const double leave = p.mu * y;
    const double serve_f = p.lambda * y * static_cast<double>(s.xf);
    const double total = serve_c + leave + serve_f;
    const double t_next = s.t + rng.exponential(total);
    if (t_next > t_max) break;
    s.t = t_next;
    const double pick = rng.uniform() * total;
    if (pick < serve_c) {
      ++s.y;
      --s.xc;
      ++sum.served;
      ++sum.served_cooperative;
    } else if (pick < serve_c + leave) {
      --s.y;
    } else {
      --s.xf;
      ++sum.served;
    }
    note_peak(sum, s.y, s.t);
    if (options.record_path) out.events.push_back(s);
  }

  sum.final_xc = s.xc;
  sum.final_xf = s.xf;
  if (s.y == 0) {
    sum.reason = TerminalReason::absorbed_y_zero;
    sum.extinction_time = s.t;
  }
  out.terminal_reason = sum.reason;
  return out;
}

GeneralTrajectory simulate_fully_cooperative(const GeneralParams& params,
                                             std::uint64_t seed,
                                             const SimulationOptions& options) {
  GeneralTrajectory out{validate(params), seed, {}, TerminalReason::time_limit, {}};
  const auto& p = out.params;
  if (!p.fully_cooperative())
    throw Error(ErrorCode::invalid_rate,
                "fully cooperative model requires mu = 0 and no free riders");
  if (p.y0 < 1) throw Error(ErrorCode::invalid_counts, "simulation needs y0 >= 1");
  const double t_max = resolve_t_max(options, 0.0);

  Rng rng(seed);
  GeneralState s{0.0, p.y0, p.nc, 0};
  PathSummary& sum = out.summary;
  note_peak(sum, s.y, 0.0);
  if (options.record_path) out.events.push_back(s);

  while (s.y < p.n_total) {
    const double rate = p.lambda * static_cast<double>(s.y) *
                        static_cast<double>(p.n_total - s.y);
    const double t_next = s.t + rng.exponential(rate);
    if (t_next > t_max) break;
    s.t = t_next;
    ++s.y;
    --s.xc;
    ++sum.served;
    ++sum.served_cooperative;
    note_peak(sum, s.y, s.t);
    if (options.record_path) out.events.push_back(s);
  }

  sum.final_xc = s.xc;
  if (s.y == p.n_total) {
    sum.reason = TerminalReason::all_served;
    sum.extinction_time = s.t;
  }
  out.terminal_reason = sum.reason;
  return out;
}

FixedRateTrajectory simulate_fixed_rate(const FixedRateParams& params,
                                        std::uint64_t seed,
                                        const SimulationOptions& options) {
  FixedRateTrajectory out{validate(params), seed, {}, TerminalReason::time_limit, {}};
  const auto& p = out.params;
  const double t_max = resolve_t_max(options, p.mu);

  Rng rng(seed);
  FixedRateState s{0.0, p.y0, p.x0()};
  PathSummary& sum = out.summary;
  note_peak(sum, s.y, 0.0);
  if (options.record_path) out.events.push_back(s);

  while (s.y > 0) {
    const double y = static_cast<double>(s.y);
    const double x = static_cast<double>(s.x);
    const double serve = p.lambda * y * x / (y + x);
    const double leave = p.mu * y;
    const double total = serve + leave;
    const double t_next = s.t + rng.exponential(total);
    if (t_next > t_max) break;
    s.t = t_next;
    if (rng.uniform() * total < serve) {
      ++s.y;
      --s.x;
      ++sum.served;
    } else {
      --s.y;
    }
    note_peak(sum, s.y, s.t);
    if (options.record_path) out.events.push_back(s);
  }

  sum.final_xc = s.x;
  if (s.y == 0) {
    sum.reason = TerminalReason::absorbed_y_zero;
    sum.extinction_time = s.t;
  }
  out.terminal_reason = sum.reason;
  return out;
}

BranchingRun simulate_branching(const BranchingParams& params, std::uint64_t seed,
                                Count cap) {
  const auto p = validate(params);
  if (cap <= p.k) throw Error(ErrorCode::invalid_threshold, "cap must exceed k");
  Rng rng(seed);
  const double birth = p.birth_probability();
  BranchingRun run{false, 0.0, p.k};
  Count y = p.k;
  while (y > 0 && y < cap) {
    run.time += rng.exponential(p.event_rate() * static_cast<double>(y));
    y += rng.uniform() < birth ? 1 : -1;
    run.max_population = std::max(run.max_population, y);
  }
  run.extinct = (y == 0);
  return run;
}

HybridOutcome simulate_hybrid(const GeneralParams& params, std::uint64_t seed, Count n0) {
  const auto p = validate(params);
  if (p.mu <= 0.0) throw Error(ErrorCode::invalid_rate, "hybrid scheme needs mu > 0");
  if (n0 <= p.y0 || n0 >= p.n_total)
    throw Error(ErrorCode::invalid_threshold, "switch threshold must satisfy y0 < n0 < N");

  Rng rng(seed);
  const double birth_per_holder = p.lambda * static_cast<double>(p.nc);
  HybridOutcome out;
  Count y = p.y0;
  Count xc = p.nc;
  Count xf = p.nf;
  double t = 0.0;
  while (y > 0 && y < n0) {
    const double dy = static_cast<double>(y);
    const double grow = birth_per_holder * dy;
    const double leave = p.mu * dy;
    const double serve_f = p.lambda * dy * static_cast<double>(xf);
    const double total = grow + leave + serve_f;
    t += rng.exponential(total);
    const double pick = rng.uniform() * total;
    if (pick < grow) {
      ++y;
      if (xc > 0) --xc;
    } else if (pick < grow + leave) {
      --y;
    } else {
      --xf;
    }
  }
  out.time = t;
  out.xc_at_switch = xc;
  out.xf_at_switch = xf;
  const double n = static_cast<double>(p.n_total);
  if (y == 0) {
    out.early_extinction = true;
    out.final_xc = static_cast<double>(xc) / n;
    out.final_xf = static_cast<double>(xf) / n;
    return out;
  }
  const double y_frac = static_cast<double>(y) / n;
  const double xc_frac = static_cast<double>(xc) / n;
  const double xf_frac = static_cast<double>(xf) / n;
  // Departed peers leave y + xc + xf < 1. Rescale to the live population so
  // the fractions sum to one; beta absorbs the factor.
  MeanFieldParams mf{p.lambda * n, p.mu, y_frac, xc_frac, xf_frac};
  const double live = y_frac + xc_frac + xf_frac;
  mf.y0 /= live;
  mf.xc0 /= live;
  mf.xf0 /= live;
  mf.beta *= live;
  const auto terminal = terminal_uninfected(mf);
  out.final_xc = terminal.xc * live;
  out.final_xf = terminal.xf * live;
  return out;
}

double simulate_tagged_acquisition(const ControlParams& params, std::uint64_t seed,
                                   double t_max) {
  const auto p = validate(params);
  const double n = static_cast<double>(p.n_total);
  const double lambda = p.beta / n;
  const double mu = p.departure_rate();
  const auto permanent = static_cast<Count>(std::llround(p.y_star * n));
  Count y = static_cast<Count>(std::llround(p.y0 * n));
  Count x = static_cast<Count>(std::llround(p.x0 * n));
  if (x < 1) throw Error(ErrorCode::invalid_counts, "no peer without the file to tag");

  Rng rng(seed);
  double t = 0.0;
  while (true) {
    const double serve = lambda * static_cast<double>(y + permanent) * static_cast<double>(x);
    const double leave = mu * static_cast<double>(y);
    const double total = serve + leave;
    if (total <= 0.0) return std::numeric_limits<double>::infinity();
    t += rng.exponential(total);
    if (t > t_max) return std::numeric_limits<double>::infinity();
    if (rng.uniform() * total < serve) {
      // The served peer is uniform among the x waiting ones, the tagged one
      // included.
      if (rng.uniform() * static_cast<double>(x) < 1.0) return t;
      ++y;
      --x;
    } else {
      --y;
    }
  }
}

}  // namespace swarm
