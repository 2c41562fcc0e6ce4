#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <span>
#include <thread>
#include <vector>

#include "swarm/ctmc.hpp"
#include "swarm/rng.hpp"

namespace swarm {

enum class ModelKind { general, fully_cooperative, fixed_rate };

struct ReplicateRecord {
  std::size_t replicate = 0;
  std::uint64_t seed = 0;
  double extinction_time = 0.0;
  Count final_xc = 0;
  Count final_xf = 0;
  Count max_y = 0;
  double peak_time = 0.0;
  Count served_cooperative = 0;
  TerminalReason reason = TerminalReason::time_limit;
};

struct EnsembleResult {
  std::vector<ReplicateRecord> records;

  std::size_t replicates() const { return records.size(); }
  std::vector<double> extinction_times() const;
};

struct EnsembleOptions {
  std::uint64_t master_seed = 0;
  std::size_t replicates = 1;
  double t_max = 0.0;
  /// 0 selects std::thread::hardware_concurrency().
  unsigned workers = 0;
};

unsigned resolve_workers(unsigned requested, std::size_t jobs);

/// Calls fn(index, child_seed(master, index)) for every index in [0, count)
/// on a pool of worker threads and returns the results in index order. The
/// output does not depend on the number of workers.
template <class Fn>
auto run_replicates(std::uint64_t master_seed, std::size_t count, unsigned workers,
                    Fn&& fn) {
  using Result = std::invoke_result_t<Fn&, std::size_t, std::uint64_t>;
  std::vector<Result> results(count);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < count; i = next++)
      results[i] = fn(i, child_seed(master_seed, i));
  };
  const unsigned n = resolve_workers(workers, count);
  if (n <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n);
    for (unsigned w = 0; w < n; ++w) pool.emplace_back(work);
  }
  return results;
}

EnsembleResult run_ensemble(ModelKind model, const GeneralParams& params,
                            const EnsembleOptions& options);
EnsembleResult run_ensemble(const FixedRateParams& params,
                            const EnsembleOptions& options);

/// Right-continuous empirical distribution function F(x) = #{s <= x} / n.
class EmpiricalCdf {
 public:
  explicit EmpiricalCdf(std::vector<double> samples);

  double operator()(double x) const;
  /// F(x-) = #{s < x} / n.
  double left_limit(double x) const;
  std::size_t size() const { return sorted_.size(); }
  const std::vector<double>& samples() const { return sorted_; }

 private:
  std::vector<double> sorted_;
};

/// Throws empty_sample for an empty input.
EmpiricalCdf empirical_cdf(std::span<const double> samples);

/// sup over x in [lo, hi] of |F(x) - g(x)| for a continuous non-decreasing g;
/// exact, since the supremum is attained at the jumps of F or the endpoints.
double sup_distance(const EmpiricalCdf& cdf, const std::function<double(double)>& g,
                    double lo, double hi);

struct MeanEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
  std::size_t count = 0;
};

MeanEstimate estimate_mean(std::span<const double> values);

/// sqrt(p (1-p) / n).
double binomial_standard_error(double p, std::size_t n);

}  // namespace swarm
