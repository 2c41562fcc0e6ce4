#include "swarm/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "swarm/error.hpp"

namespace swarm {
namespace {

constexpr double kFractionTolerance = 1e-9;

[[noreturn]] void fail(ErrorCode code, const std::string& msg) {
  throw Error(code, msg);
}

bool finite_positive(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

double ControlParams::departure_rate() const {
  if (mu_table.empty()) return mu_base * alpha;
  if (alpha <= mu_table.front().first) return mu_table.front().second;
  if (alpha >= mu_table.back().first) return mu_table.back().second;
  auto hi = std::lower_bound(
      mu_table.begin(), mu_table.end(), alpha,
      [](const auto& point, double a) { return point.first < a; });
  auto lo = std::prev(hi);
  const double w = (alpha - lo->first) / (hi->first - lo->first);
  return lo->second + w * (hi->second - lo->second);
}

GeneralParams validate(const GeneralParams& p) {
  if (p.n_total < 1 || p.y0 < 0 || p.nc < 0 || p.nf < 0)
    fail(ErrorCode::invalid_counts, "counts must be non-negative and N >= 1");
  if (p.y0 + p.nc + p.nf != p.n_total)
    fail(ErrorCode::invalid_counts,
         "y0 + nc + nf = " + std::to_string(p.y0 + p.nc + p.nf) +
             " does not equal n_total = " + std::to_string(p.n_total));
  if (!finite_positive(p.lambda))
    fail(ErrorCode::invalid_rate, "lambda must be positive");
  if (!std::isfinite(p.mu) || p.mu < 0.0)
    fail(ErrorCode::invalid_rate, "mu must be non-negative");
  if (p.mu == 0.0 && p.nf > 0)
    fail(ErrorCode::invalid_rate, "mu = 0 is only allowed without free riders");
  return p;
}

FixedRateParams validate(const FixedRateParams& p) {
  if (p.n_total < 1 || p.y0 < 1 || p.y0 > p.n_total)
    fail(ErrorCode::invalid_counts, "fixed-rate model needs 1 <= y0 <= n_total");
  if (!finite_positive(p.lambda) || !finite_positive(p.mu))
    fail(ErrorCode::invalid_rate, "fixed-rate model needs lambda > 0, mu > 0");
  return p;
}

ControlParams validate(const ControlParams& p) {
  if (p.n_total < 1) fail(ErrorCode::invalid_counts, "n_total must be >= 1");
  if (!finite_positive(p.beta))
    fail(ErrorCode::invalid_rate, "beta must be positive");
  if (!std::isfinite(p.mu_base) || p.mu_base < 0.0)
    fail(ErrorCode::invalid_rate, "mu_base must be non-negative");
  if (!std::isfinite(p.alpha) || p.alpha < 0.0)
    fail(ErrorCode::invalid_argument, "alpha must be non-negative");
  if (!(p.y_star > 0.0))
    fail(ErrorCode::invalid_fractions, "y_star must be positive");
  if (p.y0 < 0.0 || p.x0 < 0.0)
    fail(ErrorCode::invalid_fractions, "fractions must be non-negative");
  if (std::abs(p.y0 + p.x0 + p.y_star - 1.0) > kFractionTolerance)
    fail(ErrorCode::invalid_fractions, "y0 + x0 + y_star must equal 1");
  for (std::size_t i = 0; i < p.mu_table.size(); ++i) {
    const auto& [a, m] = p.mu_table[i];
    if (a < 0.0 || m < 0.0)
      fail(ErrorCode::invalid_rate, "mu_table entries must be non-negative");
    if (i > 0 && (a <= p.mu_table[i - 1].first || m < p.mu_table[i - 1].second))
      fail(ErrorCode::invalid_rate,
           "mu_table must be strictly increasing in alpha and non-decreasing in mu");
  }
  if (!finite_positive(p.time_value))
    fail(ErrorCode::invalid_argument, "time_value must be positive");
  return p;
}

DerivedQuantities derived_quantities(const GeneralParams& p) {
  if (p.mu == 0.0)
    fail(ErrorCode::division_by_zero,
         "rho and theta are undefined for mu = 0 (fully cooperative network)");
  const double beta = p.lambda * static_cast<double>(p.n_total);
  return {p.lambda * static_cast<double>(p.nc) / p.mu, beta, beta / p.mu};
}

GeneralParams general_from_ratio(Count n_total, double lambda, double mu,
                                 Count y0, double r) {
  if (!(r > 0.0 && r <= 1.0))
    fail(ErrorCode::invalid_fractions, "cooperative ratio r must lie in (0, 1]");
  const auto cooperative = static_cast<Count>(std::llround(r * static_cast<double>(n_total)));
  GeneralParams p{n_total, lambda, mu, y0, cooperative - y0, n_total - cooperative};
  return validate(p);
}

void to_json(nlohmann::json& j, const GeneralParams& p) {
  j = {{"n_total", p.n_total}, {"lambda", p.lambda}, {"mu", p.mu},
       {"y0", p.y0},           {"nc", p.nc},         {"nf", p.nf}};
}

void from_json(const nlohmann::json& j, GeneralParams& p) {
  j.at("n_total").get_to(p.n_total);
  j.at("lambda").get_to(p.lambda);
  j.at("mu").get_to(p.mu);
  j.at("y0").get_to(p.y0);
  j.at("nc").get_to(p.nc);
  p.nf = j.value("nf", Count{0});
}

void to_json(nlohmann::json& j, const FixedRateParams& p) {
  j = {{"n_total", p.n_total}, {"lambda", p.lambda}, {"mu", p.mu}, {"y0", p.y0}};
}

void from_json(const nlohmann::json& j, FixedRateParams& p) {
  j.at("n_total").get_to(p.n_total);
  j.at("lambda").get_to(p.lambda);
  j.at("mu").get_to(p.mu);
  j.at("y0").get_to(p.y0);
}

void to_json(nlohmann::json& j, const ControlParams& p) {
  j = {{"n_total", p.n_total}, {"beta", p.beta}, {"mu_base", p.mu_base},
       {"alpha", p.alpha},     {"y_star", p.y_star}, {"y0", p.y0},
       {"x0", p.x0}};
  if (!p.mu_table.empty()) j["mu_table"] = p.mu_table;
  if (p.time_value != 1.0) j["time_value"] = p.time_value;
}

void from_json(const nlohmann::json& j, ControlParams& p) {
  j.at("n_total").get_to(p.n_total);
  j.at("beta").get_to(p.beta);
  j.at("mu_base").get_to(p.mu_base);
  p.alpha = j.value("alpha", 0.0);
  j.at("y_star").get_to(p.y_star);
  j.at("y0").get_to(p.y0);
  j.at("x0").get_to(p.x0);
  p.mu_table = j.value("mu_table", std::vector<std::pair<double, double>>{});
  p.time_value = j.value("time_value", 1.0);
}

}  // namespace swarm
