#pragma once

#include <map>
#include <span>
#include <utility>
#include <vector>

#include "swarm/model.hpp"

namespace swarm {

inline constexpr Count kExactMaxPeers = 8;

struct ExactSmallN {
  std::vector<double> times;
  /// P(T(y0) <= t) at each requested time.
  std::vector<double> extinction_cdf;
  /// Distribution of (xc, xf) at absorption (y = 0).
  std::map<std::pair<Count, Count>, double> terminal;
  std::size_t state_count = 0;
};

/// Exact transient and absorption analysis of the general model for N <= 8.
/// Absorption probabilities come from a direct LU solve of the first-step
/// equations; the time-dependent law from uniformization at rate 1.1 times the
/// largest exit rate, with Poisson truncation error below 1e-10 overall.
/// `times` must be non-negative and non-decreasing.
ExactSmallN exact_small_n(const GeneralParams& params, std::span<const double> times);

}  // namespace swarm
