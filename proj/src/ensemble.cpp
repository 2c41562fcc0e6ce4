#include "swarm/ensemble.hpp"

#include <cmath>

#include "swarm/error.hpp"

namespace swarm {
namespace {

ReplicateRecord record_of(std::size_t index, std::uint64_t seed, const PathSummary& s) {
  return {index,       seed,    s.extinction_time, s.final_xc, s.final_xf,
          s.max_y,     s.peak_time, s.served_cooperative, s.reason};
}

}  // namespace

std::vector<double> EnsembleResult::extinction_times() const {
  std::vector<double> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(r.extinction_time);
  return out;
}

unsigned resolve_workers(unsigned requested, std::size_t jobs) {
  unsigned n = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(jobs, 1)));
}

EnsembleResult run_ensemble(ModelKind model, const GeneralParams& params,
                            const EnsembleOptions& options) {
  if (options.replicates < 1)
    throw Error(ErrorCode::invalid_argument, "replicates must be >= 1");
  if (model == ModelKind::fixed_rate)
    throw Error(ErrorCode::invalid_argument, "fixed-rate ensembles take FixedRateParams");
  const auto p = validate(params);
  const SimulationOptions sim{options.t_max, false};
  EnsembleResult result;
  result.records = run_replicates(
      options.master_seed, options.replicates, options.workers,
      [&](std::size_t i, std::uint64_t seed) {
        const auto path = model == ModelKind::general
                              ? simulate_general(p, seed, sim)
                              : simulate_fully_cooperative(p, seed, sim);
        return record_of(i, seed, path.summary);
      });
  return result;
}

EnsembleResult run_ensemble(const FixedRateParams& params, const EnsembleOptions& options) {
  if (options.replicates < 1)
    throw Error(ErrorCode::invalid_argument, "replicates must be >= 1");
  const auto p = validate(params);
  const SimulationOptions sim{options.t_max, false};
  EnsembleResult result;
  result.records = run_replicates(
      options.master_seed, options.replicates, options.workers,
      [&](std::size_t i, std::uint64_t seed) {
        return record_of(i, seed, simulate_fixed_rate(p, seed, sim).summary);
      });
  return result;
}

EmpiricalCdf::EmpiricalCdf(std::vector<double> samples) : sorted_(std::move(samples)) {
  if (sorted_.empty()) throw Error(ErrorCode::empty_sample, "empirical CDF of no samples");
  std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalCdf::operator()(double x) const {
  const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
  return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

double EmpiricalCdf::left_limit(double x) const {
  const auto it = std::lower_bound(sorted_.begin(), sorted_.end(), x);
  return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

EmpiricalCdf empirical_cdf(std::span<const double> samples) {
  return EmpiricalCdf({samples.begin(), samples.end()});
}

double sup_distance(const EmpiricalCdf& cdf, const std::function<double(double)>& g,
                    double lo, double hi) {
  double sup = std::max(std::abs(cdf(lo) - g(lo)), std::abs(cdf(hi) - g(hi)));
  for (double s : cdf.samples()) {
    if (s < lo || s > hi) continue;
    const double gs = g(s);
    sup = std::max({sup, std::abs(cdf(s) - gs), std::abs(cdf.left_limit(s) - gs)});
  }
  return sup;
}

MeanEstimate estimate_mean(std::span<const double> values) {
  if (values.empty()) throw Error(ErrorCode::empty_sample, "mean of no samples");
  const auto n = static_cast<double>(values.size());
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= n;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double se = values.size() > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0;
  return {mean, se, values.size()};
}

double binomial_standard_error(double p, std::size_t n) {
  return std::sqrt(std::max(0.0, p * (1.0 - p)) / static_cast<double>(n));
}

}  // namespace swarm
