#include "swarm/experiments.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <set>

#include <boost/math/tools/minima.hpp>
#include <fmt/format.h>

#include "swarm/branching.hpp"
#include "swarm/control.hpp"
#include "swarm/csv.hpp"
#include "swarm/ctmc.hpp"
#include "swarm/ensemble.hpp"
#include "swarm/error.hpp"
#include "swarm/exact.hpp"
#include "swarm/fixed_rate.hpp"
#include "swarm/meanfield.hpp"

#ifndef SWARM_VERSION
#define SWARM_VERSION "0.0.0"
#endif

namespace swarm {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr std::array kKindNames{
    std::pair{ExperimentKind::extinction_cdf, "extinction_cdf"},
    std::pair{ExperimentKind::early_extinction_mean, "early_extinction_mean"},
    std::pair{ExperimentKind::terminal_fraction, "terminal_fraction"},
    std::pair{ExperimentKind::phase_sweep, "phase_sweep"},
    std::pair{ExperimentKind::fixed_rate_sweep, "fixed_rate_sweep"},
    std::pair{ExperimentKind::control_utility, "control_utility"},
    std::pair{ExperimentKind::hybrid, "hybrid"},
    std::pair{ExperimentKind::oracle_check, "oracle_check"},
};

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

[[noreturn]] void bad_config(const std::string& what) {
  throw Error(ErrorCode::config_parse, what);
}

// --- parameter access -------------------------------------------------------

double number(const json& p, const char* key, double fallback) {
  if (!p.contains(key)) return fallback;
  const auto& v = p.at(key);
  if (!v.is_number()) bad_config(fmt::format("params.{} must be a number", key));
  return v.get<double>();
}

Count integer(const json& p, const char* key, Count fallback) {
  if (!p.contains(key)) return fallback;
  const auto& v = p.at(key);
  if (v.is_number_integer()) return v.get<Count>();
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (d == std::floor(d) && std::abs(d) < 9e15) return static_cast<Count>(d);
  }
  bad_config(fmt::format("params.{} must be an integer", key));
}

bool boolean(const json& p, const char* key, bool fallback) {
  if (!p.contains(key)) return fallback;
  if (!p.at(key).is_boolean()) bad_config(fmt::format("params.{} must be true or false", key));
  return p.at(key).get<bool>();
}

std::vector<double> numbers(const json& p, const char* key, std::vector<double> fallback) {
  if (!p.contains(key)) return fallback;
  const auto& v = p.at(key);
  if (v.is_number()) return {v.get<double>()};
  if (!v.is_array() || v.empty())
    bad_config(fmt::format("params.{} must be a number or a non-empty array", key));
  std::vector<double> out;
  for (const auto& e : v) {
    if (!e.is_number()) bad_config(fmt::format("params.{} entries must be numbers", key));
    out.push_back(e.get<double>());
  }
  return out;
}

// 0.6 -> "06", 1 -> "1", 0.95 -> "095".
std::string tag(double v) {
  std::string s = fmt::format("{}", v);
  std::erase(s, '.');
  std::ranges::replace(s, '-', 'm');
  return s;
}

std::vector<double> time_grid(const ExperimentConfig& c) {
  std::vector<double> t(c.t_points + 1);
  for (std::size_t i = 0; i <= c.t_points; ++i)
    t[i] = c.t_max * static_cast<double>(i) / static_cast<double>(c.t_points);
  return t;
}

std::vector<double> log_grid(double lo, double hi, std::size_t points) {
  if (!(lo > 0.0 && hi > lo) || points < 2) bad_config("log grid needs 0 < min < max, points >= 2");
  std::vector<double> g(points);
  const double a = std::log10(lo), b = std::log10(hi);
  for (std::size_t i = 0; i < points; ++i) {
    g[i] = std::pow(10.0, a + (b - a) * static_cast<double>(i) / static_cast<double>(points - 1));
  }
  g.front() = lo;
  g.back() = hi;
  return g;
}

std::vector<double> linear_grid(double lo, double hi, std::size_t points) {
  if (!(hi >= lo) || points < 2) bad_config("linear grid needs min <= max, points >= 2");
  std::vector<double> g(points);
  for (std::size_t i = 0; i < points; ++i)
    g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
  return g;
}

// --- output -----------------------------------------------------------------

struct Run {
  explicit Run(const ExperimentConfig& c) : config(c) {}

  const ExperimentConfig& config;
  RunResult result;
  json derived = json::object();

  fs::path csv(const std::string& suffix = {}) {
    fs::path p = config.output_dir / (config.name + (suffix.empty() ? "" : "_" + suffix) + ".csv");
    result.files.push_back(p);
    return p;
  }

  void check(std::string name, bool passed, std::string detail) {
    result.checks.push_back({std::move(name), passed, std::move(detail)});
  }
};

RunResult finish(Run& run) {
  const auto& c = run.config;
  json checks = json::array();
  for (const auto& ch : run.result.checks)
    checks.push_back({{"name", ch.name}, {"passed", ch.passed}, {"detail", ch.detail}});
  json outputs = json::array();
  for (const auto& f : run.result.files) outputs.push_back(f.filename().string());
  json choice = c.params.value("implementer_choice", json::array());

  json sidecar = {
      {"tool", "swarmsim"},
      {"version", version()},
      {"config", c},
      {"derived", run.derived},
      {"summary", run.result.summary.is_null() ? json::object() : run.result.summary},
      {"checks", checks},
      {"passed", run.result.passed()},
      {"implementer_choice", !choice.empty()},
      {"implementer_choice_fields", choice},
      {"outputs", outputs},
  };
  run.result.sidecar = c.output_dir / (c.name + ".json");
  std::error_code ec;
  fs::create_directories(c.output_dir, ec);
  std::ofstream out(run.result.sidecar, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::io_error, "cannot write " + run.result.sidecar.string());
  out << sidecar.dump(2) << '\n';
  if (!out) throw Error(ErrorCode::io_error, "write failed: " + run.result.sidecar.string());
  return std::move(run.result);
}

json derived_json(const GeneralParams& p) {
  json j = {{"beta", p.lambda * static_cast<double>(p.n_total)}};
  if (p.mu > 0.0) {
    const auto d = derived_quantities(p);
    j["rho"] = d.rho;
    j["theta"] = d.theta;
    j["theta_xc0"] = d.theta * static_cast<double>(p.nc) / static_cast<double>(p.n_total);
  }
  return j;
}

std::string fmt_num(double v) { return fmt::format("{:.6g}", v); }

// --- extinction time CDF ----------------------------------------------------

RunResult run_extinction_cdf(const ExperimentConfig& c) {
  Run run{c};
  const auto& P = c.params;
  const Count n = integer(P, "n_total", 400);
  const double lambda = number(P, "lambda", 0.006);
  const auto mus = numbers(P, "mu", {1.0});
  const Count y0 = integer(P, "y0", 1);
  const auto ratios = numbers(P, "r", {1.0});
  const bool with_branching = boolean(P, "branching", true);
  const double sim_t_max = number(P, "t_max_sim", 0.0);
  const auto times = time_grid(c);

  struct Series {
    std::string tag;
    GeneralParams p;
    BranchingParams b;
    std::vector<double> empirical;
    std::vector<double> model;
  };
  std::vector<Series> series;
  for (double mu : mus) {
    for (double r : ratios) {
      std::string name;
      if (mus.size() > 1) name = "mu" + tag(mu);
      if (ratios.size() > 1 || mus.size() == 1) name += (name.empty() ? "r" : "_r") + tag(r);
      const auto p = general_from_ratio(n, lambda, mu, y0, r);
      series.push_back({name, p, branching_from(p), {}, {}});
    }
  }

  run.result.summary = json::object();
  for (std::size_t s = 0; s < series.size(); ++s) {
    auto& se = series[s];
    const auto ensemble = run_ensemble(
        ModelKind::general, se.p,
        {child_seed(c.master_seed, s), c.replicates, sim_t_max, c.workers});
    const auto f = empirical_cdf(ensemble.extinction_times());
    for (double t : times) {
      se.empirical.push_back(f(t));
      se.model.push_back(extinction_cdf(se.b, t));
    }

    json d = derived_json(se.p);
    const double rho = se.b.rho();
    const double q = extinction_probability(se.b);
    d["extinction_probability"] = q;
    if (rho < 1.0) d["expected_extinction_time"] = expected_extinction_time(se.b);
    double t_b = kNaN;
    if (rho > 1.0) {
      t_b = validity_horizon(se.b);
      d["validity_horizon"] = t_b;
    }
    run.derived[se.tag] = d;
    run.result.summary[se.tag] = {{"empirical_cdf_at_t_max", se.empirical.back()},
                                  {"replicates", c.replicates}};

    if (!with_branching) continue;
    const auto n_rep = static_cast<std::size_t>(c.replicates);
    bool dominated = true;
    double worst = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
      const double g = se.model[i];
      const double slack = 3.0 * binomial_standard_error(g, n_rep);
      worst = std::max(worst, g - se.empirical[i] - slack);
      if (se.empirical[i] < g - slack - 1e-12) dominated = false;
    }
    run.check("dominance_" + se.tag, dominated,
              "empirical CDF >= branching CDF - 3 SE at every grid time; worst excess " +
                  fmt_num(worst));
    if (rho > 1.0) {
      const double sup = sup_distance(f, [&](double t) { return extinction_cdf(se.b, t); }, 0.0, t_b);
      run.result.summary[se.tag]["sup_distance_to_validity_horizon"] = sup;
      run.check("early_agreement_" + se.tag, sup <= 0.05,
                "sup |F - G| on [0, T_B] = " + fmt_num(sup) + " (limit 0.05)");
      if (se.p.nf == 0) {
        const double rise = se.empirical.back() - q;
        run.check("late_rise_" + se.tag, rise >= 0.3,
                  "F(t_max) - q = " + fmt_num(rise) + " (needs >= 0.3)");
      }
    }
  }

  std::vector<std::string> header{"t"};
  for (const auto& se : series) header.push_back("empirical_cdf_" + se.tag);
  if (with_branching)
    for (const auto& se : series) header.push_back("branching_cdf_" + se.tag);
  CsvWriter csv(run.csv(), header);
  for (std::size_t i = 0; i < times.size(); ++i) {
    std::vector<CsvField> row{times[i]};
    for (const auto& se : series) row.emplace_back(se.empirical[i]);
    if (with_branching)
      for (const auto& se : series) row.emplace_back(se.model[i]);
    csv.row(row);
  }
  return finish(run);
}

// --- early extinction mean --------------------------------------------------

RunResult run_early_extinction_mean(const ExperimentConfig& c) {
  Run run{c};
  const auto& P = c.params;
  const Count n = integer(P, "n_total", 300);
  const double mu = number(P, "mu", 1.0);
  const Count y0 = integer(P, "y0", 1);
  const double r = number(P, "r", 1.0);
  const auto shape = general_from_ratio(n, 1.0, mu, y0, r);
  std::vector<double> lambdas;
  if (P.contains("rho")) {
    for (double rho : numbers(P, "rho", {}))
      lambdas.push_back(rho * mu / static_cast<double>(shape.nc));
  } else {
    lambdas = numbers(P, "lambda", {0.0005, 0.001, 0.0015, 0.002, 0.0025});
  }

  CsvWriter csv(run.csv(), {"lambda", "rho", "replicates", "early_runs", "sim_mean", "sim_se",
                            "branching_mean"});
  json rows = json::array();
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    const auto p = general_from_ratio(n, lambdas[i], mu, y0, r);
    const auto b = branching_from(p);
    const double threshold = major_outbreak_threshold(p);
    const auto ensemble = run_ensemble(
        ModelKind::general, p, {child_seed(c.master_seed, i), c.replicates, 0.0, c.workers});
    std::vector<double> early;
    for (const auto& rec : ensemble.records) {
      if (rec.reason != TerminalReason::absorbed_y_zero) continue;
      if (threshold > 0.0 && static_cast<double>(rec.served_cooperative) >= threshold) continue;
      early.push_back(rec.extinction_time);
    }
    MeanEstimate est{kNaN, kNaN, 0};
    if (!early.empty()) est = estimate_mean(early);
    const double model = std::abs(b.rho() - 1.0) < 1e-9 ? kNaN : conditional_extinction_time(b);
    csv.row({lambdas[i], b.rho(), static_cast<std::uint64_t>(c.replicates),
             static_cast<std::uint64_t>(early.size()), est.mean, est.standard_error, model});
    rows.push_back({{"lambda", lambdas[i]}, {"rho", b.rho()}, {"early_runs", early.size()}});
    if (b.rho() < 1.0 && early.size() >= 2) {
      const double gap = std::abs(est.mean - model);
      run.check(fmt::format("mean_rho_{}", tag(b.rho())), gap <= 3.0 * est.standard_error,
                fmt::format("|sim - branching| = {} vs 3 SE = {}", fmt_num(gap),
                            fmt_num(3.0 * est.standard_error)));
    }
  }
  run.result.summary = {{"rows", rows}};
  return finish(run);
}

// --- terminal fraction ------------------------------------------------------

RunResult run_terminal_fraction(const ExperimentConfig& c) {
  Run run{c};
  const auto& P = c.params;
  const Count n = integer(P, "n_total", 300);
  const Count y0 = integer(P, "y0", 10);
  const auto ratios = numbers(P, "r", {1.0});
  const auto lambdas = numbers(P, "lambda", {0.006});
  const auto mus = numbers(P, "mu", {1.0});
  const double tol_coop = number(P, "tolerance_cooperative", 0.03);
  const double tol_free = number(P, "tolerance_free_riders", 0.08);

  CsvWriter csv(run.csv(), {"r", "lambda", "mu", "theta_xc0", "replicates", "late_runs",
                            "sim_fraction", "sim_se", "mf_fraction", "relative_error"});
  json rows = json::array();
  std::size_t s = 0;
  for (double r : ratios) {
    for (double mu : mus) {
      for (double lambda : lambdas) {
        const auto p = general_from_ratio(n, lambda, mu, y0, r);
        const auto mf = mean_field_from(p);
        const auto term = terminal_uninfected(mf);
        const double mf_fraction = term.xc + term.xf;
        const double threshold = major_outbreak_threshold(p);
        const auto ensemble = run_ensemble(
            ModelKind::general, p, {child_seed(c.master_seed, s++), c.replicates, 0.0, c.workers});
        std::vector<double> late;
        for (const auto& rec : ensemble.records) {
          if (static_cast<double>(rec.served_cooperative) < threshold) continue;
          late.push_back(static_cast<double>(rec.final_xc + rec.final_xf) /
                         static_cast<double>(n));
        }
        MeanEstimate est{kNaN, kNaN, 0};
        if (!late.empty()) est = estimate_mean(late);
        const double rel = (est.mean - mf_fraction) / mf_fraction;
        const double theta_xc0 = mf.theta() * mf.xc0;
        csv.row({r, lambda, mu, theta_xc0, static_cast<std::uint64_t>(c.replicates),
                 static_cast<std::uint64_t>(late.size()), est.mean, est.standard_error,
                 mf_fraction, rel});
        rows.push_back({{"r", r}, {"lambda", lambda}, {"mu", mu}, {"theta_xc0", theta_xc0},
                        {"relative_error", rel}});
        const double tol = p.nf == 0 ? tol_coop : tol_free;
        run.check(fmt::format("relative_error_r{}_lambda{}_mu{}", tag(r), tag(lambda), tag(mu)),
                  std::abs(rel) <= tol,
                  fmt::format("|sim - mf| / mf = {} (limit {})", fmt_num(std::abs(rel)),
                              fmt_num(tol)));
      }
    }
  }
  run.result.summary = {{"rows", rows}};
  return finish(run);
}

// --- mean-field phase sweep -------------------------------------------------

RunResult run_phase_sweep(const ExperimentConfig& c) {
  Run run{c};
  const auto& P = c.params;
  const double y0 = number(P, "y0", 0.05);
  const auto xc0s = numbers(P, "xc0", {0.01, 0.1, 0.3, 0.5, 0.9});
  const auto grid = log_grid(number(P, "theta_xc0_min", 0.01), number(P, "theta_xc0_max", 100.0),
                             static_cast<std::size_t>(integer(P, "points", 81)));
  const auto oracle_points = numbers(P, "oracle_points", {0.5, 2.0, 10.0});

  json summary = json::object();
  for (double xc0 : xc0s) {
    const std::string t = "xc0_" + tag(xc0);
    const auto rows = phase_sweep(y0, xc0, grid);
    {
      CsvWriter csv(run.csv(t), {"theta_xc0", "xc_inf", "xf_inf", "y_max", "tau"});
      for (const auto& row : rows)
        csv.row({row.theta_xc0, row.xc_inf, row.xf_inf, row.y_max, row.tau});
    }

    bool monotone = true;
    double steepest = 0.0, steepest_at = kNaN;
    for (std::size_t i = 1; i < rows.size(); ++i) {
      if (rows[i].xc_inf > rows[i - 1].xc_inf) monotone = false;
      const double slope = (rows[i - 1].xc_inf - rows[i].xc_inf) /
                           std::log10(rows[i].theta_xc0 / rows[i - 1].theta_xc0);
      if (slope > steepest) {
        steepest = slope;
        steepest_at = std::sqrt(rows[i].theta_xc0 * rows[i - 1].theta_xc0);
      }
    }
    run.check("monotone_" + t, monotone, "x_c(inf) non-increasing along the theta*xc0 grid");

    const auto ends = phase_sweep(y0, xc0, {0.1, 100.0});
    const double low = ends[0].xc_inf / xc0, high = ends[1].xc_inf / xc0;
    run.check("endpoints_" + t, low >= 0.5 && high <= 0.05,
              fmt::format("x_c(inf)/xc0 = {} at 0.1 (>= 0.5), {} at 100 (<= 0.05)", fmt_num(low),
                          fmt_num(high)));

    double worst = 0.0;
    for (double tx : oracle_points) {
      const MeanFieldParams mf{tx / xc0, 1.0, y0, xc0, std::max(0.0, 1.0 - y0 - xc0)};
      const auto path = integrate_ode(mf, 4000.0, 1.0);
      worst = std::max(worst, std::abs(path.back().xc - terminal_uninfected(mf).xc));
    }
    run.check("ode_cross_check_" + t, worst <= 1e-3,
              "max |ODE x_c(T) - root| = " + fmt_num(worst) + " (limit 1e-3)");
    summary[t] = {{"xc_inf_ratio_at_0.1", low},
                  {"xc_inf_ratio_at_100", high},
                  {"steepest_descent_theta_xc0", steepest_at}};
  }
  run.derived = {{"phase_transition_theta_xc0", 1.0}};
  run.result.summary = summary;
  return finish(run);
}

// --- fixed-rate sweep -------------------------------------------------------

// Largest y on the fixed-rate trajectory by dense scan plus Brent refinement.
double numeric_peak(const FixedRateMeanField& p) {
  constexpr int kScan = 4000;
  const double end = 1.0 / p.mu;
  auto y = [&](double t) { return scaled_trajectory(p, std::clamp(t, 0.0, end)).y; };
  int best = 0;
  double best_y = y(0.0);
  for (int i = 1; i <= kScan; ++i) {
    const double v = y(end * i / kScan);
    if (v > best_y) {
      best_y = v;
      best = i;
    }
  }
  const double lo = end * std::max(0, best - 1) / kScan;
  const double hi = end * std::min(kScan, best + 1) / kScan;
  const auto [t, neg] =
      boost::math::tools::brent_find_minima([&](double t) { return -y(t); }, lo, hi, 52);
  return std::max(best_y, -neg);
}

RunResult run_fixed_rate_sweep(const ExperimentConfig& c) {
  Run run{c};
  const auto& P = c.params;
  const auto x0s = numbers(P, "x0", {0.95, 0.8});
  const double mu = number(P, "mu", 1.0);
  const auto grid = log_grid(number(P, "xi_min", 0.1), number(P, "xi_max", 10.0),
                             static_cast<std::size_t>(integer(P, "points", 101)));
  const Count sim_n = integer(P, "simulate_n", 0);
  const auto sim_xi = numbers(P, "simulate_xi", {0.3, 0.5, 0.8, 1.5, 3.0});
  const double sim_tol = number(P, "simulation_tolerance", 0.02);

  json summary = json::object();
  for (std::size_t k = 0; k < x0s.size(); ++k) {
    const double x0 = x0s[k];
    const std::string t = "x0_" + tag(x0);
    const auto rows = sweep_phase_diagram(x0, grid, mu);
    {
      CsvWriter csv(run.csv(t), {"xi", "x0", "terminal_fraction", "y_max", "t_peak", "tau"});
      for (const auto& row : rows)
        csv.row({row.xi, row.x0, row.terminal_fraction, row.y_max, row.t_peak, row.tau});
    }

    double worst = 0.0;
    for (const auto& row : rows)
      worst = std::max(worst, std::abs(row.y_max - numeric_peak({row.xi, mu, x0})));
    run.check("peak_formula_" + t, worst <= 1e-6,
              "max |formula - trajectory max| = " + fmt_num(worst) + " (limit 1e-6)");

    const double xi_c = 1.0 / x0;
    double jump = 0.0;
    for (double f : {1.0 - 1e-12, 1.0, 1.0 + 1e-12, 1.0 + 1e-10})
      jump = std::max(jump, std::abs(max_torrent({xi_c * f, mu, x0}).y_max - (1.0 - x0)));
    run.check("continuity_" + t, jump <= 1e-9,
              "max |y_max - (1 - x0)| next to xi = 1/x0: " + fmt_num(jump));
    summary[t] = {{"threshold_xi", xi_c}, {"peak_formula_error", worst}};

    if (sim_n <= 0) continue;
    CsvWriter csv(run.csv(t + "_sim"), {"xi", "x0", "replicates", "sim_fraction", "sim_se",
                                        "terminal_fraction", "abs_error"});
    for (std::size_t j = 0; j < sim_xi.size(); ++j) {
      const Count y0 = static_cast<Count>(std::llround((1.0 - x0) * static_cast<double>(sim_n)));
      const FixedRateParams fp{sim_n, sim_xi[j] * mu, mu, y0};
      const auto ens = run_ensemble(
          fp, {child_seed(child_seed(c.master_seed, k), j), c.replicates, 0.0, c.workers});
      std::vector<double> frac;
      for (const auto& rec : ens.records)
        frac.push_back(static_cast<double>(rec.final_xc) / static_cast<double>(sim_n));
      const auto est = estimate_mean(frac);
      const double theory = terminal_uninfected_fraction(fixed_rate_mean_field_from(fp));
      const double err = std::abs(est.mean - theory);
      csv.row({sim_xi[j], x0, static_cast<std::uint64_t>(c.replicates), est.mean,
               est.standard_error, theory, err});
      run.check(fmt::format("simulation_{}_xi{}", t, tag(sim_xi[j])), err <= sim_tol,
                fmt::format("|sim - x0^(1/(1-xi))| = {} (limit {})", fmt_num(err),
                            fmt_num(sim_tol)));
    }
  }
  run.result.summary = summary;
  return finish(run);
}

// --- control ------------------------------------------------------------------

ControlParams control_params(const json& P) {
  ControlParams p;
  p.n_total = integer(P, "n_total", 500);
  p.beta = number(P, "beta", 2.0);
  p.mu_base = number(P, "mu", 0.5);
  const double n = static_cast<double>(p.n_total);
  p.y_star = P.contains("y_star") ? number(P, "y_star", 0.0)
                                  : static_cast<double>(integer(P, "permanent", 2)) / n;
  p.y0 = number(P, "y0", 0.0);
  p.x0 = 1.0 - p.y0 - p.y_star;
  p.time_value = number(P, "time_value", 1.0);
  if (P.contains("mu_table")) {
    try {
      p.mu_table = P.at("mu_table").get<std::vector<std::pair<double, double>>>();
    } catch (const json::exception&) {
      bad_config("params.mu_table must be an array of [alpha, mu] pairs");
    }
  }
  return validate(p);
}

RunResult run_control_utility(const ExperimentConfig& c) {
  Run run{c};
  const auto& P = c.params;
  const auto p = control_params(P);
  const double lo = number(P, "alpha_min", 0.0);
  const double hi = number(P, "alpha_max", 40.0);
  const auto grid = linear_grid(lo, hi, static_cast<std::size_t>(integer(P, "points", 81)));
  const auto band = numbers(P, "ratio_band", {1.5, 3.5});
  if (band.size() != 2) bad_config("params.ratio_band must be [low, high]");

  const auto curve = delay_curve(p, grid);
  {
    CsvWriter csv(run.csv(), {"alpha", "T_bar", "h", "beta_over_mu_alpha"});
    for (const auto& pt : curve) csv.row({pt.alpha, pt.t_bar, pt.h, pt.beta_over_mu_alpha});
  }

  const double lower = 1.0 / p.beta;
  const double upper = 1.0 / (p.beta * p.y_star);
  bool bounded = true;
  for (const auto& pt : curve)
    if (pt.t_bar < lower * (1 - 1e-9) || pt.t_bar > upper * (1 + 1e-9)) bounded = false;
  run.check("delay_bounds", bounded,
            fmt::format("1/beta = {} <= T_bar <= 1/(beta y*) = {} on the alpha grid",
                        fmt_num(lower), fmt_num(upper)));

  const auto opt = optimize_alpha(p, lo, hi);
  auto at_opt = p;
  at_opt.alpha = opt.alpha;
  const double mu_opt = at_opt.departure_rate();
  const double ratio = mu_opt > 0.0 ? p.beta / mu_opt : std::numeric_limits<double>::infinity();
  run.check("interior_maximum", opt.interior(),
            fmt::format("argmax h = {} on [{}, {}]", fmt_num(opt.alpha), fmt_num(lo), fmt_num(hi)));
  run.check("ratio_band", opt.interior() && ratio >= band[0] && ratio <= band[1],
            fmt::format("beta / mu(alpha*) = {} (band [{}, {}])", fmt_num(ratio),
                        fmt_num(band[0]), fmt_num(band[1])));
  static constexpr std::array kOptimumNames{"interior", "at_lower_bound", "at_upper_bound",
                                            "degenerate_range"};
  run.derived = {{"y_star", p.y_star}, {"x0", p.x0}, {"delay_lower_bound", lower},
                 {"delay_upper_bound", upper}};
  run.result.summary = {{"alpha_star", opt.alpha},
                        {"h_star", opt.h},
                        {"optimum", kOptimumNames[static_cast<int>(opt.kind)]},
                        {"beta_over_mu_alpha_star", ratio}};
  return finish(run);
}

// --- hybrid -------------------------------------------------------------------

RunResult run_hybrid(const ExperimentConfig& c) {
  Run run{c};
  const auto& P = c.params;
  const auto p = general_from_ratio(integer(P, "n_total", 400), number(P, "lambda", 0.006),
                                    number(P, "mu", 1.0), integer(P, "y0", 1),
                                    number(P, "r", 1.0));
  const Count n0 = integer(P, "n0", 20);
  const auto outcomes = run_replicates(
      c.master_seed, c.replicates, c.workers,
      [&](std::size_t, std::uint64_t seed) { return simulate_hybrid(p, seed, n0); });

  std::vector<double> late;
  double early = 0.0;
  {
    CsvWriter csv(run.csv(), {"replicate", "seed", "early_extinction", "time", "xc_at_switch",
                              "xf_at_switch", "final_xc", "final_xf"});
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
      const auto& o = outcomes[i];
      csv.row({static_cast<std::uint64_t>(i), child_seed(c.master_seed, i),
               static_cast<std::int64_t>(o.early_extinction), o.time, o.xc_at_switch,
               o.xf_at_switch, o.final_xc, o.final_xf});
      if (o.early_extinction) early += 1.0;
      else late.push_back(o.final_xc + o.final_xf);
    }
  }
  const double freq = early / static_cast<double>(outcomes.size());
  // Gambler's ruin for the embedded birth-death walk stopped at 0 or n0.
  const double rho = branching_from(p).rho();
  double predicted;
  if (std::abs(rho - 1.0) < 1e-12) {
    predicted = 1.0 - static_cast<double>(p.y0) / static_cast<double>(n0);
  } else {
    const double a = 1.0 / rho;
    const double an = std::pow(a, static_cast<double>(n0));
    predicted = (std::pow(a, static_cast<double>(p.y0)) - an) / (1.0 - an);
  }
  const double se = binomial_standard_error(predicted, outcomes.size());
  run.check("early_extinction_probability", std::abs(freq - predicted) <= 3.0 * se + 1e-12,
            fmt::format("frequency {} vs {} (3 SE = {})", fmt_num(freq), fmt_num(predicted),
                        fmt_num(3.0 * se)));
  const auto term = terminal_uninfected(mean_field_from(p));
  run.derived = derived_json(p);
  run.derived["early_extinction_probability"] = predicted;
  run.derived["mean_field_uninfected"] = term.xc + term.xf;
  run.result.summary = {{"early_extinction_frequency", freq},
                        {"late_runs", late.size()},
                        {"mean_late_uninfected", late.empty() ? kNaN : estimate_mean(late).mean}};
  return finish(run);
}

// --- small-N oracle -----------------------------------------------------------

RunResult run_oracle_check(const ExperimentConfig& c) {
  Run run{c};
  const auto& P = c.params;
  const Count n = integer(P, "n_total", 4);
  const Count y0 = integer(P, "y0", 1);
  const Count nf = integer(P, "nf", 1);
  const GeneralParams p = validate(GeneralParams{n, number(P, "lambda", 1.0), number(P, "mu", 1.0),
                                                 y0, n - y0 - nf, nf});
  auto times = time_grid(c);
  times.erase(times.begin());
  const auto exact = exact_small_n(p, times);
  const auto ens = run_ensemble(ModelKind::general, p,
                                {c.master_seed, c.replicates, 0.0, c.workers});
  const auto reps = static_cast<double>(c.replicates);
  std::map<std::pair<Count, Count>, double> counts;
  for (const auto& rec : ens.records) counts[{rec.final_xc, rec.final_xf}] += 1.0;
  const auto f = empirical_cdf(ens.extinction_times());

  CsvWriter csv(run.csv(), {"quantity", "xc", "xf", "t", "exact", "empirical", "standard_error"});
  double worst_z = 0.0;
  bool terminal_ok = true, cdf_ok = true;
  auto compare = [&](double ex, double emp, bool& ok) {
    const double se = binomial_standard_error(ex, c.replicates);
    const double gap = std::abs(emp - ex);
    if (se > 0.0) worst_z = std::max(worst_z, gap / se);
    if (gap > 3.0 * se + 1e-12) ok = false;
    return se;
  };
  std::set<std::pair<Count, Count>> keys;
  for (const auto& [k, v] : exact.terminal) keys.insert(k);
  for (const auto& [k, v] : counts) keys.insert(k);
  for (const auto& k : keys) {
    const double ex = exact.terminal.contains(k) ? exact.terminal.at(k) : 0.0;
    const double emp = counts.contains(k) ? counts.at(k) / reps : 0.0;
    const double se = compare(ex, emp, terminal_ok);
    csv.row({std::string("terminal"), k.first, k.second, std::string(), ex, emp, se});
  }
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double emp = f(times[i]);
    const double se = compare(exact.extinction_cdf[i], emp, cdf_ok);
    csv.row({std::string("extinction_cdf"), std::string(), std::string(), times[i],
             exact.extinction_cdf[i], emp, se});
  }
  run.check("terminal_distribution", terminal_ok,
            "every terminal outcome within 3 SE of the exact probability");
  run.check("extinction_cdf", cdf_ok, "every grid time within 3 SE of the exact CDF");
  run.derived = {{"state_count", exact.state_count}};
  run.result.summary = {{"max_standardized_gap", worst_z}};
  return finish(run);
}

// --- figure presets -------------------------------------------------------------

json grid_of(double lo, double hi, double step) {
  json a = json::array();
  const auto count = static_cast<int>(std::llround((hi - lo) / step));
  for (int i = 0; i <= count; ++i) a.push_back(std::round((lo + step * i) * 1e9) / 1e9);
  return a;
}

const std::map<std::string, json, std::less<>>& presets() {
  static const std::map<std::string, json, std::less<>> table = [] {
    std::map<std::string, json, std::less<>> m;
    m["1"] = {{"kind", "phase_sweep"},
              {"name", "fig1"},
              {"params",
               {{"y0", 0.05},
                {"xc0", {0.01, 0.1, 0.3, 0.5, 0.9}},
                {"theta_xc0_min", 0.01},
                {"theta_xc0_max", 100.0},
                {"points", 81}}}};
    m["1bis"] = {{"kind", "fixed_rate_sweep"},
                 {"name", "fig1bis"},
                 {"params", {{"x0", {0.95, 0.8}}, {"xi_min", 0.1}, {"xi_max", 10.0}, {"points", 101}}}};
    auto cdf = [](const char* name, int y0) {
      return json{{"kind", "extinction_cdf"},
                  {"name", name},
                  {"replicates", 1000},
                  {"t_grid", {{"t_max", 25.0}, {"points", 50}}},
                  {"params",
                   {{"n_total", 400}, {"lambda", 0.006}, {"mu", 1.0}, {"y0", y0}, {"r", {1.0, 0.6}}}}};
    };
    m["3"] = cdf("fig3", 1);
    m["4"] = cdf("fig4", 3);
    auto by_mu = [](const char* name, int y0) {
      return json{{"kind", "extinction_cdf"},
                  {"name", name},
                  {"replicates", 1000},
                  {"t_grid", {{"t_max", 50.0}, {"points", 100}}},
                  {"params",
                   {{"n_total", 400},
                    {"lambda", 0.0025},
                    {"mu", {0.5, 1.0}},
                    {"y0", y0},
                    {"r", 1.0},
                    {"branching", false},
                    {"implementer_choice", {"mu", "r"}}}}};
    };
    m["5"] = by_mu("fig5", 1);
    m["6"] = by_mu("fig6", 3);
    m["7"] = {{"kind", "terminal_fraction"},
              {"name", "fig7"},
              {"replicates", 500},
              {"params",
               {{"n_total", 300},
                {"y0", 10},
                {"mu", 1.0},
                {"r", {1.0, 0.5}},
                {"lambda", grid_of(0.002, 0.012, 0.001)},
                {"implementer_choice", {"lambda"}}}}};
    m["8"] = {{"kind", "terminal_fraction"},
              {"name", "fig8"},
              {"replicates", 500},
              {"params",
               {{"n_total", 300},
                {"y0", 10},
                {"lambda", 0.01},
                {"r", {1.0, 0.5}},
                {"mu", grid_of(0.5, 3.0, 0.25)},
                {"implementer_choice", {"lambda", "mu"}}}}};
    m["9"] = {{"kind", "control_utility"},
              {"name", "fig9"},
              {"params",
               {{"n_total", 500},
                {"permanent", 2},
                {"y0", 0.0},
                {"beta", 2.0},
                {"mu", 0.5},
                {"alpha_min", 0.0},
                {"alpha_max", 40.0},
                {"points", 81},
                {"implementer_choice", {"beta", "mu"}}}}};
    return m;
  }();
  return table;
}

}  // namespace

std::string_view version() { return SWARM_VERSION; }

std::string_view to_string(ExperimentKind kind) {
  for (const auto& [k, name] : kKindNames)
    if (k == kind) return name;
  return "unknown";
}

ExperimentKind parse_experiment_kind(std::string_view name) {
  for (const auto& [k, n] : kKindNames)
    if (name == n) return k;
  bad_config("unknown experiment kind '" + std::string(name) + "'");
}

void to_json(json& j, const ExperimentConfig& c) {
  j = {{"kind", to_string(c.kind)},
       {"name", c.name},
       {"params", c.params},
       {"replicates", c.replicates},
       {"seed", c.master_seed},
       {"output", c.output_dir.string()},
       {"t_grid", {{"t_max", c.t_max}, {"points", c.t_points}}},
       {"workers", c.workers}};
}

void from_json(const json& j, ExperimentConfig& c) {
  if (!j.is_object()) bad_config("config must be a JSON object");
  try {
    if (!j.contains("kind")) bad_config("config needs a \"kind\"");
    c.kind = parse_experiment_kind(j.at("kind").get<std::string>());
    c.name = j.value("name", std::string(to_string(c.kind)));
    if (c.name.empty() || c.name.find_first_of("/\\") != std::string::npos)
      bad_config("name must be a non-empty file stem");
    c.params = j.value("params", json::object());
    if (!c.params.is_object()) bad_config("params must be an object");
    if (j.contains("replicates")) {
      const auto& r = j.at("replicates");
      if (!r.is_number_integer() || r.get<long long>() < 1) bad_config("replicates must be >= 1");
      c.replicates = r.get<std::size_t>();
    }
    if (j.contains("seed")) {
      const auto& s = j.at("seed");
      if (!s.is_number_integer() || (s.is_number_integer() && !s.is_number_unsigned() &&
                                     s.get<long long>() < 0))
        bad_config("seed must be a non-negative integer");
      c.master_seed = s.get<std::uint64_t>();
    }
    if (j.contains("output")) c.output_dir = j.at("output").get<std::string>();
    if (j.contains("workers")) {
      const auto& w = j.at("workers");
      if (!w.is_number_integer() || w.get<long long>() < 0) bad_config("workers must be >= 0");
      c.workers = w.get<unsigned>();
    }
    if (j.contains("t_grid")) {
      const auto& g = j.at("t_grid");
      c.t_max = g.value("t_max", c.t_max);
      const auto points = g.value("points", static_cast<long long>(c.t_points));
      if (!(c.t_max > 0.0) || points < 1) bad_config("t_grid needs t_max > 0 and points >= 1");
      c.t_points = static_cast<std::size_t>(points);
    }
  } catch (const json::exception& e) {
    bad_config(std::string("malformed config: ") + e.what());
  }
}

ExperimentConfig parse_config(const json& j) {
  ExperimentConfig c;
  from_json(j, c);
  return c;
}

void apply_overrides(json& config, const json& overrides) {
  static const std::set<std::string, std::less<>> top{
      "kind", "name", "params", "replicates", "seed", "output", "workers", "t_grid"};
  for (const auto& [key, value] : overrides.items()) {
    std::string path = key;
    std::replace(path.begin(), path.end(), '.', '/');
    const std::string head = key.substr(0, key.find('.'));
    const std::string pointer = "/" + (top.contains(head) ? path : "params/" + path);
    try {
      config[json::json_pointer(pointer)] = value;
    } catch (const json::exception& e) {
      bad_config("cannot apply override " + key + ": " + e.what());
    }
  }
}

bool RunResult::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

RunResult run(const ExperimentConfig& config) {
  switch (config.kind) {
    case ExperimentKind::extinction_cdf: return run_extinction_cdf(config);
    case ExperimentKind::early_extinction_mean: return run_early_extinction_mean(config);
    case ExperimentKind::terminal_fraction: return run_terminal_fraction(config);
    case ExperimentKind::phase_sweep: return run_phase_sweep(config);
    case ExperimentKind::fixed_rate_sweep: return run_fixed_rate_sweep(config);
    case ExperimentKind::control_utility: return run_control_utility(config);
    case ExperimentKind::hybrid: return run_hybrid(config);
    case ExperimentKind::oracle_check: return run_oracle_check(config);
  }
  bad_config("unhandled experiment kind");
}

std::vector<std::string> figure_ids() { return {"1", "1bis", "3", "4", "5", "6", "7", "8", "9"}; }

json figure_config(std::string_view id) {
  const auto& table = presets();
  const auto it = table.find(id);
  if (it == table.end())
    throw Error(ErrorCode::unknown_figure, "no preset for figure '" + std::string(id) + "'");
  return it->second;
}

RunResult figure(std::string_view id, const json& overrides) {
  json cfg = figure_config(id);
  apply_overrides(cfg, overrides);
  return run(parse_config(cfg));
}

double major_outbreak_threshold(const GeneralParams& p) {
  if (p.mu <= 0.0 || p.nc == 0) return 0.0;
  const auto mf = mean_field_from(p);
  if (mf.theta() * mf.xc0 <= 1.0) return 0.0;
  const auto term = terminal_uninfected(mf);
  return 0.5 * (mf.xc0 - term.xc) * static_cast<double>(p.n_total);
}

}  // namespace swarm
