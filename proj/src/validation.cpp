#include "swarm/validation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <iterator>
#include <limits>
#include <map>

#include <unistd.h>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/tools/minima.hpp>
#include <fmt/format.h>

#include "swarm/branching.hpp"
#include "swarm/control.hpp"
#include "swarm/ctmc.hpp"
#include "swarm/ensemble.hpp"
#include "swarm/error.hpp"
#include "swarm/exact.hpp"
#include "swarm/experiments.hpp"
#include "swarm/fixed_rate.hpp"
#include "swarm/meanfield.hpp"

namespace swarm {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr std::array<std::string_view, kCriterionCount> kNames{
    "extinction_probability", "extinction_time_identity", "dominance",
    "early_cdf",              "early_mean",               "cooperative_bound",
    "meanfield_accuracy",     "phase_transition",         "fixed_rate",
    "small_n_oracle",         "control",                  "determinism",
};

std::string num(double v) { return fmt::format("{:.6g}", v); }

struct Outcome {
  bool passed = true;
  std::vector<std::string> notes;
  json details = json::object();

  void require(bool ok, std::string note) {
    if (!ok) {
      passed = false;
      notes.push_back(std::move(note));
    }
  }
};

CriterionResult finish(int id, Outcome o, std::string headline) {
  CriterionResult r{id, std::string(kNames[id - 1]), o.passed, std::move(headline),
                    std::move(o.details)};
  if (!o.notes.empty()) {
    r.summary += "; failed: " + o.notes.front();
    if (o.notes.size() > 1) r.summary += fmt::format(" (+{} more)", o.notes.size() - 1);
  }
  return r;
}

// Criterion seeds: one independent stream per criterion and sub-experiment.
std::uint64_t seed_for(const ValidationOptions& o, int id, std::size_t sub = 0) {
  return child_seed(child_seed(o.seed, static_cast<std::uint64_t>(id)), sub);
}

// --- 1 ------------------------------------------------------------------------

CriterionResult branching_extinction(const ValidationOptions& o) {
  const BranchingParams p{0.006 * 399, 1.0, 1};
  constexpr std::size_t kRuns = 10000;
  const auto extinct = run_replicates(seed_for(o, 1), kRuns, o.workers,
                                      [&](std::size_t, std::uint64_t s) {
                                        return simulate_branching(p, s, 200).extinct ? 1 : 0;
                                      });
  const double freq =
      static_cast<double>(std::count(extinct.begin(), extinct.end(), 1)) / kRuns;
  const double q = extinction_probability(p);
  const double se = binomial_standard_error(q, kRuns);
  Outcome out;
  out.require(std::abs(freq - q) <= 3.0 * se, "frequency outside 3 SE");
  out.details = {{"rho", p.rho()}, {"frequency", freq}, {"q", q}, {"standard_error", se}};
  return finish(1, std::move(out),
                fmt::format("rho={} frequency {} vs 1/rho {} (3 SE {})", num(p.rho()), num(freq),
                            num(q), num(3 * se)));
}

// --- 2 ------------------------------------------------------------------------

CriterionResult extinction_time_identity(const ValidationOptions&) {
  Outcome out;
  double worst = 0.0;
  boost::math::quadrature::exp_sinh<double> integrator;
  for (double rho : {0.2, 0.5, 0.9}) {
    const BranchingParams p{rho, 1.0, 1};
    const double closed = -std::log1p(-rho) / rho;
    const double numeric = integrator.integrate(
        [&](double t) { return 1.0 - extinction_cdf(p, t); }, 0.0,
        std::numeric_limits<double>::infinity(), 1e-13);
    const double library = expected_extinction_time(p);
    const double rel = std::max(std::abs(numeric - closed), std::abs(library - closed)) / closed;
    worst = std::max(worst, rel);
    out.require(rel <= 1e-6, fmt::format("rho={} relative gap {}", num(rho), num(rel)));
    out.details[fmt::format("rho_{}", rho)] = {
        {"closed_form", closed}, {"integral", numeric}, {"library", library}};
  }
  return finish(2, std::move(out), "max relative gap " + num(worst) + " (limit 1e-6)");
}

// --- 3 and 4 ------------------------------------------------------------------

struct CdfCase {
  Count y0;
  double r;
  GeneralParams p;
  BranchingParams b;
  EmpiricalCdf cdf;
};

std::vector<CdfCase> early_cdf_cases(const ValidationOptions& o, int id) {
  std::vector<CdfCase> cases;
  std::size_t sub = 0;
  for (Count y0 : {1, 3}) {
    for (double r : {1.0, 0.6}) {
      const auto p = general_from_ratio(400, 0.006, 1.0, y0, r);
      const auto ens =
          run_ensemble(ModelKind::general, p, {seed_for(o, id, sub++), 1000, 0.0, o.workers});
      cases.push_back({y0, r, p, branching_from(p), empirical_cdf(ens.extinction_times())});
    }
  }
  return cases;
}

CriterionResult dominance(const ValidationOptions& o) {
  Outcome out;
  double worst = -1.0;
  for (const auto& c : early_cdf_cases(o, 3)) {
    double case_worst = -1.0;
    for (int i = 1; i <= 50; ++i) {
      const double t = 0.5 * i;
      const double g = extinction_cdf(c.b, t);
      const double survival = 1.0 - c.cdf(t);
      const double bound = 1.0 - g + 3.0 * binomial_standard_error(g, c.cdf.size());
      case_worst = std::max(case_worst, survival - bound);
    }
    worst = std::max(worst, case_worst);
    out.require(case_worst <= 1e-12,
                fmt::format("Y0={} r={} exceeds the bound by {}", c.y0, c.r, num(case_worst)));
    out.details[fmt::format("y0_{}_r_{}", c.y0, c.r)] = {{"max_excess", case_worst}};
  }
  return finish(3, std::move(out),
                "max(survival - (1 - G + 3 SE)) over 4 cases x 50 times = " + num(worst));
}

CriterionResult early_cdf(const ValidationOptions& o) {
  Outcome out;
  std::vector<std::string> parts;
  for (const auto& c : early_cdf_cases(o, 3)) {
    const double t_b = validity_horizon(c.b);
    const double sup =
        sup_distance(c.cdf, [&](double t) { return extinction_cdf(c.b, t); }, 0.0, t_b);
    json d = {{"rho", c.b.rho()}, {"validity_horizon", t_b}, {"sup_distance", sup}};
    out.require(sup <= 0.05, fmt::format("Y0={} r={} sup distance {}", c.y0, c.r, num(sup)));
    std::string part = fmt::format("Y0={} r={}: sup {}", c.y0, c.r, num(sup));
    if (c.p.nf == 0) {
      const double rise = c.cdf(25.0) - extinction_probability(c.b);
      d["late_rise"] = rise;
      out.require(rise >= 0.3, fmt::format("Y0={} late rise {}", c.y0, num(rise)));
      part += ", rise " + num(rise);
    }
    parts.push_back(part);
    out.details[fmt::format("y0_{}_r_{}", c.y0, c.r)] = d;
  }
  std::string headline;
  for (std::size_t i = 0; i < parts.size(); ++i) headline += (i ? "; " : "") + parts[i];
  return finish(4, std::move(out), headline);
}

// --- 5 ------------------------------------------------------------------------

CriterionResult early_mean(const ValidationOptions& o) {
  Outcome out;
  double worst_z = 0.0;
  std::size_t sub = 0;
  for (Count k : {1, 3}) {
    for (double rho : {0.2, 0.4, 0.6, 0.8}) {
      const Count nc = 300 - k;
      const auto p = validate(GeneralParams{300, rho / static_cast<double>(nc), 1.0, k, nc, 0});
      const auto ens =
          run_ensemble(ModelKind::general, p, {seed_for(o, 5, sub++), 1000, 1e4, o.workers});
      std::vector<double> times;
      for (const auto& rec : ens.records)
        if (rec.reason == TerminalReason::absorbed_y_zero) times.push_back(rec.extinction_time);
      const auto est = estimate_mean(times);
      const double model = expected_extinction_time(branching_from(p));
      const double z = std::abs(est.mean - model) / est.standard_error;
      worst_z = std::max(worst_z, z);
      out.require(z <= 3.0, fmt::format("k={} rho={} gap {} SE", k, rho, num(z)));
      out.details[fmt::format("k_{}_rho_{}", k, rho)] = {{"sim_mean", est.mean},
                                                         {"standard_error", est.standard_error},
                                                         {"branching_mean", model},
                                                         {"runs", times.size()}};
    }
  }
  return finish(5, std::move(out),
                "max |sim - E[T_b(k)]| / SE over 8 cases = " + num(worst_z) + " (limit 3)");
}

// --- 6 ------------------------------------------------------------------------

CriterionResult cooperative_bound(const ValidationOptions& o) {
  Outcome out;
  constexpr Count kN = 300;
  constexpr std::size_t kRuns = 500;
  constexpr int kSamples = 40;
  double worst = -1e300;
  std::size_t sub = 0;
  for (double beta : {1.0, 2.0}) {
    for (double y0 : {0.05, 0.1}) {
      const auto holders = static_cast<Count>(std::llround(y0 * kN));
      const GeneralParams p{kN, beta / kN, 0.0, holders, kN - holders, 0};
      const double horizon = 10.0 / beta;
      const auto paths = run_replicates(
          seed_for(o, 6, sub++), kRuns, o.workers, [&](std::size_t, std::uint64_t s) {
            const auto tr = simulate_fully_cooperative(p, s, {0.0, true});
            std::vector<double> y(kSamples + 1);
            std::size_t e = 0;
            for (int j = 0; j <= kSamples; ++j) {
              const double t = horizon * j / kSamples;
              while (e + 1 < tr.events.size() && tr.events[e + 1].t <= t) ++e;
              y[j] = static_cast<double>(tr.events[e].y);
            }
            return y;
          });
      double case_worst = -1e300;
      for (int j = 0; j <= kSamples; ++j) {
        std::vector<double> column;
        column.reserve(kRuns);
        for (const auto& path : paths) column.push_back(path[j]);
        const auto est = estimate_mean(column);
        const double t = horizon * j / kSamples;
        const double bound = kN * fully_coop_closed_form(beta, y0, t);
        case_worst = std::max(case_worst, est.mean - bound - 3.0 * est.standard_error);
      }
      worst = std::max(worst, case_worst);
      out.require(case_worst <= 1e-9,
                  fmt::format("beta={} y0={} exceeds N y(t) + 3 SE by {}", beta, y0,
                              num(case_worst)));
      out.details[fmt::format("beta_{}_y0_{}", beta, y0)] = {{"max_excess", case_worst}};
    }
  }
  return finish(6, std::move(out),
                "max(mean Y(t) - N y(t) - 3 SE) over 4 cases x 41 times = " + num(worst));
}

// --- 7 ------------------------------------------------------------------------

CriterionResult meanfield_accuracy(const ValidationOptions& o) {
  Outcome out;
  std::size_t sub = 0;
  std::map<double, double> worst;
  for (double r : {1.0, 0.5}) {
    const double tol = r == 1.0 ? 0.03 : 0.08;
    for (double tx : {0.5, 0.8, 1.25, 2.0, 3.0}) {
      const Count nc = general_from_ratio(300, 1.0, 1.0, 10, r).nc;
      const auto p = general_from_ratio(300, tx / static_cast<double>(nc), 1.0, 10, r);
      const auto term = terminal_uninfected(mean_field_from(p));
      const double mf = term.xc + term.xf;
      const double threshold = major_outbreak_threshold(p);
      const auto ens =
          run_ensemble(ModelKind::general, p, {seed_for(o, 7, sub++), 500, 0.0, o.workers});
      std::vector<double> fractions;
      for (const auto& rec : ens.records)
        if (static_cast<double>(rec.served_cooperative) >= threshold)
          fractions.push_back(static_cast<double>(rec.final_xc + rec.final_xf) / 300.0);
      const double sim = estimate_mean(fractions).mean;
      const double rel = std::abs(sim - mf) / mf;
      worst[r] = std::max(worst[r], rel);
      out.require(rel <= tol, fmt::format("r={} theta*xc0={} relative error {} > {}", r, tx,
                                          num(rel), num(tol)));
      out.details[fmt::format("r_{}_theta_xc0_{}", r, tx)] = {{"lambda", p.lambda},
                                                              {"simulation", sim},
                                                              {"mean_field", mf},
                                                              {"relative_error", rel},
                                                              {"late_runs", fractions.size()}};
    }
  }
  return finish(7, std::move(out),
                fmt::format("max relative error r=1: {} (limit 0.03), r=0.5: {} (limit 0.08)",
                            num(worst[1.0]), num(worst[0.5])));
}

// --- 8 ------------------------------------------------------------------------

CriterionResult phase_transition(const ValidationOptions&) {
  Outcome out;
  std::vector<double> grid;
  for (int i = 0; i <= 80; ++i) grid.push_back(std::pow(10.0, -2.0 + 4.0 * i / 80));
  double worst_ode = 0.0;
  for (double xc0 : {0.01, 0.1, 0.3, 0.5, 0.9}) {
    const auto rows = phase_sweep(0.05, xc0, grid);
    bool monotone = true;
    for (std::size_t i = 1; i < rows.size(); ++i)
      monotone = monotone && rows[i].xc_inf <= rows[i - 1].xc_inf;
    out.require(monotone, fmt::format("xc0={} curve not monotone", xc0));
    const auto ends = phase_sweep(0.05, xc0, {0.1, 100.0});
    const double low = ends[0].xc_inf / xc0, high = ends[1].xc_inf / xc0;
    out.require(low >= 0.5, fmt::format("xc0={} ratio {} at 0.1", xc0, num(low)));
    out.require(high <= 0.05, fmt::format("xc0={} ratio {} at 100", xc0, num(high)));
    for (double tx : {0.1, 0.5, 2.0, 10.0}) {
      const MeanFieldParams mf{tx / xc0, 1.0, 0.05, xc0, 0.95 - xc0};
      const double ode = integrate_ode(mf, 4000.0, 1.0).back().xc;
      const double gap = std::abs(ode - terminal_uninfected(mf).xc);
      worst_ode = std::max(worst_ode, gap);
      out.require(gap <= 1e-3, fmt::format("xc0={} theta*xc0={} ODE gap {}", xc0, tx, num(gap)));
    }
    out.details[fmt::format("xc0_{}", xc0)] = {{"ratio_at_0.1", low}, {"ratio_at_100", high}};
  }
  out.details["max_ode_gap"] = worst_ode;
  return finish(8, std::move(out),
                "5 monotone curves, endpoint ratios in range, max ODE gap " + num(worst_ode));
}

// --- 9 ------------------------------------------------------------------------

double trajectory_peak(const FixedRateMeanField& p) {
  constexpr int kScan = 20000;
  auto y = [&](double t) { return scaled_trajectory(p, std::clamp(t, 0.0, 1.0 / p.mu)).y; };
  int best = 0;
  for (int i = 1; i <= kScan; ++i)
    if (y(static_cast<double>(i) / kScan / p.mu) > y(static_cast<double>(best) / kScan / p.mu))
      best = i;
  const double lo = std::max(0, best - 1) / (kScan * p.mu);
  const double hi = std::min(kScan, best + 1) / (kScan * p.mu);
  const auto found =
      boost::math::tools::brent_find_minima([&](double t) { return -y(t); }, lo, hi, 52);
  return std::max(y(static_cast<double>(best) / kScan / p.mu), -found.second);
}

CriterionResult fixed_rate(const ValidationOptions& o) {
  Outcome out;
  constexpr Count kN = 10000;
  double worst_sim = 0.0;
  std::size_t sub = 0;
  for (double xi : {0.3, 0.5, 0.8, 1.5, 3.0}) {
    const FixedRateParams p{kN, xi, 1.0, 2000};
    const auto ens = run_ensemble(p, {seed_for(o, 9, sub++), 200, 0.0, o.workers});
    std::vector<double> frac;
    for (const auto& rec : ens.records) frac.push_back(static_cast<double>(rec.final_xc) / kN);
    const double sim = estimate_mean(frac).mean;
    const double theory = terminal_uninfected_fraction({xi, 1.0, 0.8});
    const double gap = std::abs(sim - theory);
    worst_sim = std::max(worst_sim, gap);
    out.require(gap <= 0.02, fmt::format("xi={} terminal gap {}", xi, num(gap)));
    out.details[fmt::format("terminal_xi_{}", xi)] = {{"simulation", sim}, {"formula", theory}};
  }

  double worst_peak = 0.0;
  for (double x0 : {0.95, 0.8, 0.5, 0.3}) {
    for (int i = 0; i <= 40; ++i) {
      const double xi = std::pow(10.0, -1.0 + 2.0 * i / 40);
      const FixedRateMeanField p{xi, 1.0, x0};
      worst_peak = std::max(worst_peak, std::abs(max_torrent(p).y_max - trajectory_peak(p)));
    }
  }
  out.require(worst_peak <= 1e-6, "peak formula gap " + num(worst_peak));

  double worst_jump = 0.0;
  for (double x0 : {0.95, 0.8, 0.5}) {
    for (double f : {1.0 - 1e-10, 1.0 - 1e-12, 1.0, 1.0 + 1e-12, 1.0 + 1e-10})
      worst_jump = std::max(worst_jump,
                            std::abs(max_torrent({f / x0, 1.0, x0}).y_max - (1.0 - x0)));
  }
  out.require(worst_jump <= 1e-9, "discontinuity " + num(worst_jump));
  out.details["max_peak_gap"] = worst_peak;
  out.details["max_threshold_jump"] = worst_jump;
  return finish(9, std::move(out),
                fmt::format("terminal gap {} (limit 0.02), peak gap {} (limit 1e-6), jump {} "
                            "(limit 1e-9)",
                            num(worst_sim), num(worst_peak), num(worst_jump)));
}

// --- 10 -----------------------------------------------------------------------

CriterionResult small_n_oracle(const ValidationOptions& o) {
  Outcome out;
  constexpr std::size_t kRuns = 100000;
  std::vector<double> times;
  for (int i = 1; i <= 8; ++i) times.push_back(0.5 * i);
  double worst_z = 0.0;
  std::size_t comparisons = 0;
  for (Count n : {3, 4, 5}) {
    const GeneralParams p{n, 1.0, 1.0, 1, n - 2, 1};
    const auto exact = exact_small_n(p, times);
    const auto ens = run_ensemble(ModelKind::general, p,
                                  {seed_for(o, 10, static_cast<std::size_t>(n)), kRuns, 0.0,
                                   o.workers});
    std::map<std::pair<Count, Count>, double> counts;
    for (const auto& rec : ens.records) counts[{rec.final_xc, rec.final_xf}] += 1.0;
    const auto f = empirical_cdf(ens.extinction_times());
    auto compare = [&](double ex, double emp, const std::string& what) {
      ++comparisons;
      const double se = binomial_standard_error(ex, kRuns);
      const double gap = std::abs(emp - ex);
      if (se > 0.0) worst_z = std::max(worst_z, gap / se);
      out.require(gap <= 3.0 * se + 1e-12,
                  fmt::format("N={} {}: {} vs exact {}", n, what, num(emp), num(ex)));
    };
    for (const auto& [k, v] : counts)
      if (!exact.terminal.contains(k)) compare(0.0, v / kRuns, "impossible outcome");
    for (const auto& [k, prob] : exact.terminal) {
      const double emp = counts.contains(k) ? counts.at(k) / kRuns : 0.0;
      compare(prob, emp, fmt::format("terminal ({}, {})", k.first, k.second));
    }
    for (std::size_t i = 0; i < times.size(); ++i)
      compare(exact.extinction_cdf[i], f(times[i]), fmt::format("CDF at t={}", times[i]));
    out.details[fmt::format("n_{}", n)] = {{"states", exact.state_count},
                                           {"terminal_outcomes", exact.terminal.size()}};
  }
  out.details["max_standardized_gap"] = worst_z;
  return finish(10, std::move(out),
                fmt::format("{} comparisons, max |gap| / SE = {} (limit 3)", comparisons,
                            num(worst_z)));
}

// --- 11 -----------------------------------------------------------------------

CriterionResult control(const ValidationOptions&) {
  Outcome out;
  ControlParams p;
  p.n_total = 500;
  p.beta = 2.0;
  p.mu_base = 0.5;
  p.y_star = 2.0 / 500.0;
  p.y0 = 0.0;
  p.x0 = 1.0 - p.y_star;
  std::vector<double> grid;
  for (int i = 0; i <= 80; ++i) grid.push_back(0.5 * i);
  const auto curve = delay_curve(p, grid);
  const double lower = 1.0 / p.beta, upper = 1.0 / (p.beta * p.y_star);
  bool bounded = true;
  for (const auto& pt : curve)
    bounded = bounded && pt.t_bar >= lower * (1 - 1e-9) && pt.t_bar <= upper * (1 + 1e-9);
  out.require(bounded, "T_bar outside [1/beta, 1/(beta y*)]");
  const auto opt = optimize_alpha(p, grid.front(), grid.back());
  out.require(opt.interior(), "no interior maximum of h");
  const double ratio = p.beta / (p.mu_base * opt.alpha);
  out.require(opt.interior() && ratio >= 1.5 && ratio <= 3.5,
              fmt::format("beta/mu(alpha*) = {} outside [1.5, 3.5]", num(ratio)));
  out.details = {{"beta", p.beta},       {"mu", p.mu_base}, {"alpha_star", opt.alpha},
                 {"h_star", opt.h},      {"ratio", ratio},  {"t_bar_min", curve.front().t_bar},
                 {"t_bar_max", curve.back().t_bar}};
  return finish(11, std::move(out),
                fmt::format("beta=2 mu=0.5: bounds {}, alpha* = {}, beta/mu(alpha*) = {}",
                            bounded ? "hold" : "violated", num(opt.alpha), num(ratio)));
}

// --- 12 -----------------------------------------------------------------------

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(ErrorCode::io_error, "cannot read " + p.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

CriterionResult determinism(const ValidationOptions& o) {
  Outcome out;
  const fs::path root =
      fs::temp_directory_path() / fmt::format("swarmsim-determinism-{}", ::getpid());
  std::vector<std::string> contents;
  for (unsigned workers : {1u, 4u, 1u}) {
    const fs::path dir = root / fmt::format("run{}", contents.size());
    const auto result = figure("3", {{"output", dir.string()},
                                     {"workers", workers},
                                     {"seed", o.seed}});
    contents.push_back(slurp(result.files.front()));
  }
  std::error_code ec;
  fs::remove_all(root, ec);
  const bool same = contents[0] == contents[1] && contents[1] == contents[2];
  out.require(same, "figure 3 CSV differs between runs");
  out.details = {{"bytes", contents[0].size()}, {"runs", contents.size()}};
  return finish(12, std::move(out),
                fmt::format("figure 3 rerun x3 (1, 4, 1 workers): {} bytes, {}",
                            contents[0].size(), same ? "identical" : "different"));
}

}  // namespace

std::string_view criterion_name(int id) {
  if (id < 1 || id > kCriterionCount) return "unknown";
  return kNames[id - 1];
}

std::vector<std::string> suite_names() {
  std::vector<std::string> names(kNames.begin(), kNames.end());
  names.push_back("all");
  return names;
}

std::vector<int> suite_criteria(std::string_view suite) {
  if (suite == "all") {
    std::vector<int> ids(kCriterionCount);
    for (int i = 0; i < kCriterionCount; ++i) ids[i] = i + 1;
    return ids;
  }
  for (int i = 0; i < kCriterionCount; ++i)
    if (suite == kNames[i] || suite == std::to_string(i + 1)) return {i + 1};
  throw Error(ErrorCode::config_parse, "unknown validation suite '" + std::string(suite) + "'");
}

CriterionResult run_criterion(int id, const ValidationOptions& o) {
  switch (id) {
    case 1: return branching_extinction(o);
    case 2: return extinction_time_identity(o);
    case 3: return dominance(o);
    case 4: return early_cdf(o);
    case 5: return early_mean(o);
    case 6: return cooperative_bound(o);
    case 7: return meanfield_accuracy(o);
    case 8: return phase_transition(o);
    case 9: return fixed_rate(o);
    case 10: return small_n_oracle(o);
    case 11: return control(o);
    case 12: return determinism(o);
    default: throw Error(ErrorCode::invalid_argument, fmt::format("no criterion {}", id));
  }
}

json to_json(const CriterionResult& r) {
  return {{"id", r.id},
          {"name", r.name},
          {"passed", r.passed},
          {"summary", r.summary},
          {"details", r.details}};
}

json report(std::string_view suite, const ValidationOptions& options) {
  json criteria = json::array();
  bool passed = true;
  for (int id : suite_criteria(suite)) {
    const auto r = run_criterion(id, options);
    passed = passed && r.passed;
    criteria.push_back(to_json(r));
  }
  return {{"suite", suite}, {"version", version()}, {"seed", options.seed},
          {"passed", passed}, {"criteria", criteria}};
}

}  // namespace swarm
