#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <json.hpp>

namespace swarm {

using Count = std::int64_t;

/// Free-rider epidemic: N peers, pairwise contact rate lambda, cooperative
/// peers holding the file leave at rate mu, free riders leave on receipt.
struct GeneralParams {
  Count n_total = 0;
  double lambda = 0.0;
  double mu = 0.0;
  Count y0 = 0;
  Count nc = 0;
  Count nf = 0;

  bool fully_cooperative() const { return mu == 0.0 && nf == 0; }
};

struct GeneralState {
  double t = 0.0;
  Count y = 0;
  Count xc = 0;
  Count xf = 0;

  friend bool operator==(const GeneralState&, const GeneralState&) = default;
};

/// Each peer without the file contacts a uniformly chosen peer at rate lambda.
struct FixedRateParams {
  Count n_total = 0;
  double lambda = 0.0;
  double mu = 0.0;
  Count y0 = 0;

  Count x0() const { return n_total - y0; }
  double xi() const { return lambda / mu; }
};

struct FixedRateState {
  double t = 0.0;
  Count y = 0;
  Count x = 0;

  friend bool operator==(const FixedRateState&, const FixedRateState&) = default;
};

/// Content-owner investment model. y0, x0, y_star are fractions of n_total.
/// The departure rate at investment alpha is mu_base * alpha unless
/// mu_table holds a tabulated (alpha, mu) response, interpolated linearly.
struct ControlParams {
  Count n_total = 0;
  double beta = 0.0;
  double mu_base = 0.0;
  double alpha = 0.0;
  double y_star = 0.0;
  double y0 = 0.0;
  double x0 = 0.0;
  std::vector<std::pair<double, double>> mu_table;
  // Converts delay into the units of alpha inside the utility.
  double time_value = 1.0;

  double departure_rate() const;
};

struct MeanFieldState {
  double t = 0.0;
  double y = 0.0;
  double xc = 0.0;
  double xf = 0.0;
};

struct DerivedQuantities {
  double rho = 0.0;
  double beta = 0.0;
  double theta = 0.0;
};

GeneralParams validate(const GeneralParams& p);
FixedRateParams validate(const FixedRateParams& p);
ControlParams validate(const ControlParams& p);

/// rho = lambda*nc/mu, beta = lambda*N, theta = beta/mu.
/// Throws division_by_zero when mu == 0.
DerivedQuantities derived_quantities(const GeneralParams& p);

/// Splits N peers with y0 initial holders so that (y0 + nc)/N = r, the rest
/// being free riders. nc is rounded to the nearest integer.
GeneralParams general_from_ratio(Count n_total, double lambda, double mu,
                                 Count y0, double r);

void to_json(nlohmann::json& j, const GeneralParams& p);
void from_json(const nlohmann::json& j, GeneralParams& p);
void to_json(nlohmann::json& j, const FixedRateParams& p);
void from_json(const nlohmann::json& j, FixedRateParams& p);
void to_json(nlohmann::json& j, const ControlParams& p);
void from_json(const nlohmann::json& j, ControlParams& p);

}  // namespace swarm
