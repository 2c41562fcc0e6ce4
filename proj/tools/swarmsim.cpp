// swarmsim: command-line front end to the swarm library.
//
//   swarmsim <command> [--config FILE] [--seed U64] [--out DIR] [--replicates N]
//            [--workers N] [key=value ...]
//
// A config holding "kind" runs a full experiment; otherwise the command reads
// a flat parameter object. Flags beat key=value overrides, which beat the
// config file, which beats the built-in defaults.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "swarm/branching.hpp"
#include "swarm/csv.hpp"
#include "swarm/ctmc.hpp"
#include "swarm/ensemble.hpp"
#include "swarm/error.hpp"
#include "swarm/experiments.hpp"
#include "swarm/fixed_rate.hpp"
#include "swarm/meanfield.hpp"
#include "swarm/rng.hpp"
#include "swarm/validation.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using swarm::Error;
using swarm::ErrorCode;

namespace {

enum Exit { kOk = 0, kChecksFailed = 1, kBadInput = 2 };

struct Common {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::size_t> replicates;
  std::optional<unsigned> workers;
  std::vector<std::string> overrides;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--config", c.config, "JSON config file");
  cmd->add_option("--seed", c.seed, "master seed");
  cmd->add_option("--out", c.out, "output directory");
  cmd->add_option("--replicates", c.replicates, "replicate count")->check(CLI::PositiveNumber);
  cmd->add_option("--workers", c.workers, "worker threads (0 = all cores)");
}

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrorCode::config_parse, msg); }

json load_file(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io_error, "cannot open config " + path);
  try {
    json j = json::parse(in);
    if (!j.is_object()) bad("config " + path + " is not a JSON object");
    return j;
  } catch (const json::parse_error& e) {
    bad("config " + path + ": " + e.what());
  }
}

// key=value with value read as JSON when it parses, else as a plain string.
json parse_overrides(const std::vector<std::string>& items) {
  json out = json::object();
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) bad("override '" + item + "' is not key=value");
    const std::string value = item.substr(eq + 1);
    json parsed = json::parse(value, nullptr, false);
    out[item.substr(0, eq)] = parsed.is_discarded() ? json(value) : parsed;
  }
  return out;
}

json flag_overrides(const Common& c) {
  json out = json::object();
  if (c.seed) out["seed"] = *c.seed;
  if (c.out) out["output"] = *c.out;
  if (c.replicates) out["replicates"] = *c.replicates;
  if (c.workers) out["workers"] = *c.workers;
  return out;
}

int print_result(const swarm::RunResult& r) {
  for (const auto& f : r.files) fmt::print("wrote {}\n", f.string());
  fmt::print("wrote {}\n", r.sidecar.string());
  for (const auto& c : r.checks)
    fmt::print("[{}] {}: {}\n", c.passed ? "PASS" : "FAIL", c.name, c.detail);
  return r.passed() ? kOk : kChecksFailed;
}

int run_experiment(json doc, const Common& c) {
  swarm::apply_overrides(doc, parse_overrides(c.overrides));
  swarm::apply_overrides(doc, flag_overrides(c));
  return print_result(swarm::run(swarm::parse_config(doc)));
}

// --- direct commands ----------------------------------------------------------

struct Direct {
  json params;
  std::uint64_t seed = 1;
  fs::path out = "out";
  std::size_t replicates = 1;
  unsigned workers = 0;
};

Direct resolve(json defaults, const json& file, const Common& c) {
  Direct d;
  auto take = [&](const json& src) {
    for (const auto& [k, v] : src.items()) {
      if (k == "seed") d.seed = v.get<std::uint64_t>();
      else if (k == "output") d.out = v.get<std::string>();
      else if (k == "replicates") d.replicates = v.get<std::size_t>();
      else if (k == "workers") d.workers = v.get<unsigned>();
      else if (k == "params") defaults.update(v);
      else defaults[k] = v;
    }
  };
  try {
    take(file);
    take(parse_overrides(c.overrides));
    take(flag_overrides(c));
  } catch (const json::exception& e) {
    bad(e.what());
  }
  d.params = std::move(defaults);
  return d;
}

template <class T>
T get(const json& p, const char* key) {
  try {
    return p.at(key).get<T>();
  } catch (const json::exception&) {
    bad(fmt::format("parameter '{}' is missing or has the wrong type", key));
  }
}

std::vector<double> grid(const json& p) {
  if (p.contains("times")) return get<std::vector<double>>(p, "times");
  const double t_max = get<double>(p, "t_max");
  const auto points = get<std::size_t>(p, "points");
  if (points < 1 || !(t_max > 0.0)) bad("need t_max > 0 and points >= 1");
  std::vector<double> ts;
  for (std::size_t i = 0; i <= points; ++i)
    ts.push_back(t_max * static_cast<double>(i) / static_cast<double>(points));
  return ts;
}

fs::path write_sidecar(const Direct& d, const std::string& command, json derived,
                       const std::vector<fs::path>& outputs) {
  json files = json::array();
  for (const auto& f : outputs) files.push_back(f.filename().string());
  const json doc = {{"tool", "swarmsim"},     {"version", swarm::version()},
                    {"command", command},     {"config",
                                               {{"params", d.params},
                                                {"seed", d.seed},
                                                {"replicates", d.replicates},
                                                {"workers", d.workers},
                                                {"output", d.out.string()}}},
                    {"derived", std::move(derived)}, {"outputs", files}};
  const fs::path path = d.out / (command + ".json");
  std::ofstream out(path);
  if (!(out << doc.dump(2) << '\n')) throw Error(ErrorCode::io_error, "cannot write " + path.string());
  return path;
}

int finish(const Direct& d, const std::string& command, const json& derived,
           const std::vector<fs::path>& outputs) {
  for (const auto& f : outputs) fmt::print("wrote {}\n", f.string());
  fmt::print("wrote {}\n", write_sidecar(d, command, derived, outputs).string());
  fmt::print("{}\n", derived.dump());
  return kOk;
}

int cmd_simulate(const Direct& d) {
  const auto& p = d.params;
  const auto model = get<std::string>(p, "model");
  const double t_max = get<double>(p, "t_max");
  const fs::path csv = d.out / "simulate.csv";
  const swarm::EnsembleOptions opts{d.seed, d.replicates, t_max, d.workers};
  json derived;

  if (model == "fixed_rate") {
    const auto fp = swarm::validate(swarm::FixedRateParams{
        get<swarm::Count>(p, "n_total"), get<double>(p, "lambda"), get<double>(p, "mu"),
        get<swarm::Count>(p, "y0")});
    derived = {{"xi", fp.lambda / fp.mu},
               {"terminal_fraction",
                swarm::terminal_uninfected_fraction(swarm::fixed_rate_mean_field_from(fp))}};
    if (d.replicates == 1)
      swarm::write_trajectory_csv(
          csv, swarm::simulate_fixed_rate(fp, swarm::child_seed(d.seed, 0), {t_max, true}));
    else
      swarm::write_ensemble_csv(csv, swarm::run_ensemble(fp, opts));
    return finish(d, "simulate", derived, {csv});
  }

  swarm::ModelKind kind;
  if (model == "general") kind = swarm::ModelKind::general;
  else if (model == "fully_cooperative") kind = swarm::ModelKind::fully_cooperative;
  else bad("model must be general, fully_cooperative or fixed_rate");

  const auto n = get<swarm::Count>(p, "n_total");
  const auto y0 = get<swarm::Count>(p, "y0");
  const double mu = kind == swarm::ModelKind::fully_cooperative ? 0.0 : get<double>(p, "mu");
  swarm::GeneralParams gp;
  if (p.contains("nc"))
    gp = swarm::validate(swarm::GeneralParams{n, get<double>(p, "lambda"), mu, y0,
                                              get<swarm::Count>(p, "nc"),
                                              p.value("nf", swarm::Count{0})});
  else if (kind == swarm::ModelKind::fully_cooperative)
    gp = swarm::validate(swarm::GeneralParams{n, get<double>(p, "lambda"), 0.0, y0, n - y0, 0});
  else
    gp = swarm::general_from_ratio(n, get<double>(p, "lambda"), mu, y0, get<double>(p, "r"));
  derived = {{"nc", gp.nc}, {"nf", gp.nf}, {"beta", gp.lambda * static_cast<double>(gp.n_total)}};
  if (gp.mu > 0.0) {
    const auto q = swarm::derived_quantities(gp);
    derived["rho"] = q.rho;
    derived["theta"] = q.theta;
  }

  if (d.replicates == 1) {
    const auto seed = swarm::child_seed(d.seed, 0);
    const auto tr = kind == swarm::ModelKind::general
                        ? swarm::simulate_general(gp, seed, {t_max, true})
                        : swarm::simulate_fully_cooperative(gp, seed, {t_max, true});
    derived["terminal_reason"] = swarm::to_string(tr.terminal_reason);
    swarm::write_trajectory_csv(csv, tr);
  } else {
    swarm::write_ensemble_csv(csv, swarm::run_ensemble(kind, gp, opts));
  }
  return finish(d, "simulate", derived, {csv});
}

int cmd_branching(const Direct& d) {
  const auto& p = d.params;
  const auto bp = swarm::validate(swarm::BranchingParams{
      get<double>(p, "lambda_nc"), get<double>(p, "mu"), get<swarm::Count>(p, "k")});
  const fs::path csv = d.out / "branching.csv";
  {
    swarm::CsvWriter w(csv, {"t", "G_k"});
    for (double t : grid(p)) w.row({t, swarm::extinction_cdf(bp, t)});
  }
  json derived = {{"rho", bp.rho()}, {"extinction_probability", swarm::extinction_probability(bp)}};
  if (bp.rho() < 1.0) derived["expected_extinction_time"] = swarm::expected_extinction_time(bp);
  if (bp.rho() > 1.0) derived["validity_horizon"] = swarm::validity_horizon(bp);
  return finish(d, "branching", derived, {csv});
}

int cmd_meanfield(const Direct& d) {
  const auto& p = d.params;
  const auto mf = swarm::validate(swarm::MeanFieldParams{
      get<double>(p, "beta"), get<double>(p, "mu"), get<double>(p, "y0"), get<double>(p, "xc0"),
      get<double>(p, "xf0")});
  const double t_max = get<double>(p, "t_max");
  const auto points = get<std::size_t>(p, "points");
  if (points < 1 || !(t_max > 0.0)) bad("need t_max > 0 and points >= 1");
  const fs::path csv = d.out / "meanfield.csv";
  {
    swarm::CsvWriter w(csv, {"t", "y", "xc", "xf"});
    for (const auto& s : swarm::integrate_ode(mf, t_max, t_max / static_cast<double>(points)))
      w.row({s.t, s.y, s.xc, s.xf});
  }
  const auto peak = swarm::peak_fraction(mf);
  const auto term = swarm::terminal_uninfected(mf);
  const json derived = {{"theta", mf.theta()},       {"theta_xc0", mf.theta() * mf.xc0},
                        {"phi", mf.phi()},           {"y_max", peak.y_max},
                        {"xc_at_peak", peak.xc_at_peak}, {"xc_inf", term.xc},
                        {"xf_inf", term.xf},         {"tau", swarm::terminal_time(mf)}};
  return finish(d, "meanfield", derived, {csv});
}

int cmd_fixedrate(const Direct& d) {
  const auto& p = d.params;
  const auto fr = swarm::validate(
      swarm::FixedRateMeanField{get<double>(p, "xi"), get<double>(p, "mu"), get<double>(p, "x0")});
  const auto points = get<std::size_t>(p, "points");
  if (points < 1) bad("points must be >= 1");
  const double stop = swarm::stop_time(fr);
  const fs::path csv = d.out / "fixedrate.csv";
  {
    swarm::CsvWriter w(csv, {"t", "y", "x"});
    for (std::size_t i = 0; i <= points; ++i) {
      const double t = stop * static_cast<double>(i) / static_cast<double>(points);
      const auto s = swarm::scaled_trajectory(fr, t);
      w.row({t, std::max(s.y, 0.0), s.x});
    }
  }
  const auto peak = swarm::max_torrent(fr);
  const json derived = {{"terminal_fraction", swarm::terminal_uninfected_fraction(fr)},
                        {"stop_time", stop},
                        {"y_max", peak.y_max},
                        {"t_peak", peak.t_peak},
                        {"threshold_xi", 1.0 / fr.x0}};
  return finish(d, "fixedrate", derived, {csv});
}

int cmd_report(const std::string& suite, const Common& c) {
  swarm::ValidationOptions opts;
  if (c.seed) opts.seed = *c.seed;
  if (c.workers) opts.workers = *c.workers;
  const json doc = swarm::report(suite, opts);
  for (const auto& r : doc["criteria"])
    std::fprintf(stderr, "[%s] %2d %s: %s\n", r["passed"].get<bool>() ? "PASS" : "FAIL",
                 r["id"].get<int>(), r["name"].get<std::string>().c_str(),
                 r["summary"].get<std::string>().c_str());
  if (c.out) {
    const fs::path path = fs::path(*c.out) / fmt::format("report_{}.json", suite);
    fs::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!(out << doc.dump(2) << '\n')) throw Error(ErrorCode::io_error, "cannot write " + path.string());
  }
  std::cout << doc.dump(2) << '\n';
  return doc["passed"].get<bool>() ? kOk : kChecksFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Swarm file-sharing models: simulation, approximations and figure data"};
  app.set_version_flag("--version", std::string(swarm::version()));
  app.require_subcommand(1);

  Common c;
  std::string id;
  const std::vector<std::pair<std::string, std::string>> plain{
      {"simulate", "Monte Carlo runs of the CTMC (trajectory or ensemble CSV)"},
      {"branching", "extinction-time CDF of the branching approximation"},
      {"meanfield", "mean-field trajectory and terminal quantities"},
      {"fixedrate", "fixed request-rate mean-field trajectory"},
      {"control", "content-owner utility curve and optimal investment"},
  };
  for (const auto& [name, help] : plain) {
    auto* cmd = app.add_subcommand(name, help);
    add_common(cmd, c);
    cmd->add_option("overrides", c.overrides, "key=value parameter overrides");
  }
  auto* fig = app.add_subcommand("figure", "regenerate the data behind one figure preset");
  add_common(fig, c);
  fig->add_option("id", id, "figure id")->required();
  fig->add_option("overrides", c.overrides, "key=value parameter overrides");
  auto* rep = app.add_subcommand("report", "run acceptance checks and emit JSON");
  add_common(rep, c);
  rep->add_option("suite", id, "suite name, criterion number, or all")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kBadInput;
  }

  try {
    const std::string command = app.get_subcommands().front()->get_name();
    if (command == "report") return cmd_report(id, c);

    json file = load_file(c.config);
    if (command == "figure") {
      json doc = swarm::figure_config(id);
      doc.merge_patch(file);
      return run_experiment(std::move(doc), c);
    }
    if (command == "control") {
      json doc = swarm::figure_config("9");
      doc["name"] = "control";
      doc["params"].erase("implementer_choice");
      doc.merge_patch(file);
      return run_experiment(std::move(doc), c);
    }
    if (file.contains("kind")) return run_experiment(std::move(file), c);

    if (command == "simulate") {
      const json defaults = {{"model", "general"}, {"n_total", 400}, {"lambda", 0.006},
                             {"mu", 1.0},         {"y0", 1},         {"r", 1.0},
                             {"t_max", 0.0}};
      return cmd_simulate(resolve(defaults, file, c));
    }
    if (command == "branching") {
      const json defaults = {{"lambda_nc", 0.006 * 399}, {"mu", 1.0}, {"k", 1},
                             {"t_max", 25.0},           {"points", 50}};
      return cmd_branching(resolve(defaults, file, c));
    }
    if (command == "meanfield") {
      const json defaults = {{"beta", 2.0}, {"mu", 1.0},     {"y0", 0.05},   {"xc0", 0.95},
                             {"xf0", 0.0},  {"t_max", 25.0}, {"points", 250}};
      return cmd_meanfield(resolve(defaults, file, c));
    }
    const json defaults = {{"xi", 2.0}, {"mu", 1.0}, {"x0", 0.8}, {"points", 200}};
    return cmd_fixedrate(resolve(defaults, file, c));
  } catch (const Error& e) {
    std::fprintf(stderr, "swarmsim: %s: %s\n", std::string(swarm::to_string(e.code())).c_str(),
                 e.what());
    return kBadInput;
  } catch (const fs::filesystem_error& e) {
    std::fprintf(stderr, "swarmsim: io_error: %s\n", e.what());
    return kBadInput;
  } catch (const json::exception& e) {
    std::fprintf(stderr, "swarmsim: config_parse: %s\n", e.what());
    return kBadInput;
  }
}
