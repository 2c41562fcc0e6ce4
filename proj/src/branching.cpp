#include "swarm/branching.hpp"

#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "swarm/error.hpp"

namespace swarm {
namespace {

constexpr double kCriticalBand = 1e-9;

double cdf_one(double rho, double mu, double t) {
  const double a = mu * t;
  const double eps = 1.0 - rho;
  if (std::abs(eps) < kCriticalBand) return a / (1.0 + a);
  if (eps > 0.0) {
    // (1 - e^{-eps a}) / (1 - rho e^{-eps a}); the denominator is split as
    // (1 - e^{-eps a}) + eps e^{-eps a}, a sum of non-negative terms.
    const double num = -std::expm1(-eps * a);
    return num / (num + eps * std::exp(-eps * a));
  }
  // rho > 1: multiply through by e^{eps a} (which is < 1) to avoid overflow.
  const double num = -std::expm1(eps * a);
  return num / (-eps + num);
}

}  // namespace

BranchingParams validate(const BranchingParams& p) {
  if (!std::isfinite(p.lambda_nc) || p.lambda_nc < 0.0)
    throw Error(ErrorCode::invalid_rate, "lambda_nc must be non-negative");
  if (!std::isfinite(p.mu) || p.mu <= 0.0)
    throw Error(ErrorCode::invalid_rate, "branching death rate mu must be positive");
  if (p.k < 1) throw Error(ErrorCode::invalid_counts, "k must be >= 1");
  return p;
}

BranchingParams branching_from(const GeneralParams& p) {
  return validate(BranchingParams{p.lambda * static_cast<double>(p.nc), p.mu, p.y0});
}

double extinction_probability(const BranchingParams& p) {
  validate(p);
  const double rho = p.rho();
  if (rho <= 1.0) return 1.0;
  return std::pow(1.0 / rho, static_cast<double>(p.k));
}

double extinction_cdf(const BranchingParams& p, double t) {
  validate(p);
  if (t < 0.0) throw Error(ErrorCode::negative_time, "t must be non-negative");
  if (std::isinf(t)) return extinction_probability(p);
  return std::pow(cdf_one(p.rho(), p.mu, t), static_cast<double>(p.k));
}

double survival_upper_bound(const BranchingParams& p, double t) {
  return 1.0 - extinction_cdf(p, t);
}

double expected_extinction_time(const BranchingParams& p) {
  validate(p);
  const double rho = p.rho();
  if (rho >= 1.0)
    throw Error(ErrorCode::supercritical,
                "expected extinction time is only defined for rho < 1");
  if (p.k == 1) {
    if (rho == 0.0) return 1.0 / p.mu;
    return -std::log1p(-rho) / (p.mu * rho);
  }
  // 1 - G_k(t) ~ k (1-rho) e^{-mu (1-rho) t} for large t; cut where it drops
  // below 1e-12 and add the exponential tail beyond.
  const double decay = p.mu * (1.0 - rho);
  auto survival = [&](double t) { return 1.0 - extinction_cdf(p, t); };
  double horizon = 1.0 / decay;
  while (survival(horizon) >= 1e-12) horizon *= 2.0;

  using boost::math::quadrature::gauss_kronrod;
  double total = 0.0;
  // Split at powers of two of the decay scale so each panel sees a bounded
  // dynamic range.
  double lo = 0.0;
  for (double hi = 0.125 / decay; lo < horizon; hi = std::min(2.0 * hi, horizon)) {
    double err = 0.0;
    total += gauss_kronrod<double, 61>::integrate(survival, lo, hi, 15, 1e-12, &err);
    lo = hi;
  }
  return total + survival(horizon) / decay;
}

double conditional_extinction_time(const BranchingParams& p) {
  validate(p);
  if (std::abs(p.rho() - 1.0) < 1e-9)
    throw Error(ErrorCode::supercritical, "extinction time has infinite mean at rho = 1");
  if (p.rho() < 1.0) return expected_extinction_time(p);
  return expected_extinction_time({p.mu, p.lambda_nc, p.k});
}

double validity_horizon(const BranchingParams& p, double fraction) {
  validate(p);
  if (!(fraction > 0.0 && fraction < 1.0))
    throw Error(ErrorCode::invalid_argument, "fraction must lie in (0, 1)");
  const double target = fraction * extinction_probability(p);
  double lo = 0.0;
  double hi = 1.0 / p.mu;
  while (extinction_cdf(p, hi) < target) hi *= 2.0;
  for (int i = 0; i < 200 && hi - lo > 1e-12 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (extinction_cdf(p, mid) < target ? lo : hi) = mid;
  }
  return hi;
}

}  // namespace swarm
