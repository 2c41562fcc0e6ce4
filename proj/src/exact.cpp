#include "swarm/exact.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>

#include <Eigen/Dense>

#include "swarm/error.hpp"

namespace swarm {
namespace {

struct Transition {
  std::size_t to;
  double rate;
};

struct StateSpace {
  std::vector<std::array<Count, 3>> states;  // (y, xc, xf)
  std::vector<std::vector<Transition>> out;
  std::vector<double> exit_rate;
};

StateSpace enumerate(const GeneralParams& p) {
  StateSpace space;
  std::map<std::array<Count, 3>, std::size_t> index;
  std::deque<std::size_t> frontier;
  auto intern = [&](const std::array<Count, 3>& s) {
    auto [it, inserted] = index.try_emplace(s, space.states.size());
    if (inserted) {
      space.states.push_back(s);
      space.out.emplace_back();
      space.exit_rate.push_back(0.0);
      frontier.push_back(it->second);
    }
    return it->second;
  };
  intern({p.y0, p.nc, p.nf});
  while (!frontier.empty()) {
    const std::size_t i = frontier.front();
    frontier.pop_front();
    const auto [y, xc, xf] = space.states[i];
    if (y == 0) continue;
    const double dy = static_cast<double>(y);
    std::vector<Transition> moves;
    if (xc > 0) moves.push_back({intern({y + 1, xc - 1, xf}), p.lambda * dy * xc});
    moves.push_back({intern({y - 1, xc, xf}), p.mu * dy});
    if (xf > 0) moves.push_back({intern({y, xc, xf - 1}), p.lambda * dy * xf});
    double total = 0.0;
    for (const auto& m : moves) total += m.rate;
    space.out[i] = std::move(moves);
    space.exit_rate[i] = total;
  }
  return space;
}

}  // namespace

ExactSmallN exact_small_n(const GeneralParams& params, std::span<const double> times) {
  const auto p = validate(params);
  if (p.n_total > kExactMaxPeers)
    throw Error(ErrorCode::state_space_too_large,
                "exact analysis is limited to N <= " + std::to_string(kExactMaxPeers));
  if (p.mu <= 0.0) throw Error(ErrorCode::invalid_rate, "exact analysis needs mu > 0");
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] < 0.0) throw Error(ErrorCode::negative_time, "times must be >= 0");
    if (i > 0 && times[i] < times[i - 1])
      throw Error(ErrorCode::invalid_argument, "times must be non-decreasing");
  }

  const StateSpace space = enumerate(p);
  const std::size_t n = space.states.size();
  ExactSmallN result;
  result.times.assign(times.begin(), times.end());
  result.state_count = n;

  std::vector<std::size_t> transient, absorbing;
  std::vector<std::size_t> slot(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto& group = space.states[i][0] > 0 ? transient : absorbing;
    slot[i] = group.size();
    group.push_back(i);
  }

  // Absorption: (I - P_TT) B = P_TA on the embedded jump chain.
  if (transient.empty()) {
    result.terminal[{p.nc, p.nf}] = 1.0;
  } else {
    const auto nt = static_cast<Eigen::Index>(transient.size());
    const auto na = static_cast<Eigen::Index>(absorbing.size());
    Eigen::MatrixXd lhs = Eigen::MatrixXd::Identity(nt, nt);
    Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(nt, na);
    for (Eigen::Index r = 0; r < nt; ++r) {
      const std::size_t i = transient[static_cast<std::size_t>(r)];
      for (const auto& m : space.out[i]) {
        const double prob = m.rate / space.exit_rate[i];
        const auto c = static_cast<Eigen::Index>(slot[m.to]);
        if (space.states[m.to][0] > 0)
          lhs(r, c) -= prob;
        else
          rhs(r, c) += prob;
      }
    }
    const Eigen::MatrixXd absorb = lhs.partialPivLu().solve(rhs);
    // The initial state is the first one enumerated.
    for (Eigen::Index c = 0; c < na; ++c) {
      const auto& s = space.states[absorbing[static_cast<std::size_t>(c)]];
      result.terminal[{s[1], s[2]}] += absorb(0, c);
    }
  }

  // Uniformization, propagated interval by interval with sub-steps of
  // Lambda*h <= 10 so that e^{-Lambda h} stays well inside double range.
  const double max_exit = *std::max_element(space.exit_rate.begin(), space.exit_rate.end());
  const double uniform_rate = max_exit > 0.0 ? 1.1 * max_exit : 1.0;
  const double horizon = times.empty() ? 0.0 : times.back();
  const double substeps_total = std::max(1.0, std::ceil(uniform_rate * horizon / 10.0));
  const double step_tail = 1e-10 / substeps_total;

  std::vector<double> dist(n, 0.0), next(n), term(n);
  dist[0] = 1.0;
  auto jump = [&](const std::vector<double>& from, std::vector<double>& to) {
    for (std::size_t i = 0; i < n; ++i) to[i] = from[i] * (1.0 - space.exit_rate[i] / uniform_rate);
    for (std::size_t i = 0; i < n; ++i)
      for (const auto& m : space.out[i]) to[m.to] += from[i] * m.rate / uniform_rate;
  };
  auto advance = [&](double h) {
    const double a = uniform_rate * h;
    double weight = std::exp(-a);
    double mass = weight;
    term = dist;
    for (std::size_t i = 0; i < n; ++i) next[i] = weight * term[i];
    for (int k = 1; 1.0 - mass > step_tail && k < 10000; ++k) {
      jump(term, dist);
      std::swap(term, dist);
      weight *= a / k;
      mass += weight;
      for (std::size_t i = 0; i < n; ++i) next[i] += weight * term[i];
    }
    dist = next;
  };

  double now = 0.0;
  for (double t : times) {
    double remaining = t - now;
    while (remaining > 0.0) {
      const double h = std::min(remaining, 10.0 / uniform_rate);
      advance(h);
      remaining -= h;
    }
    now = t;
    double absorbed = 0.0;
    for (std::size_t i : absorbing) absorbed += dist[i];
    result.extinction_cdf.push_back(absorbed);
  }
  return result;
}

}  // namespace swarm
