#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>

#include <unistd.h>

#include "swarm/error.hpp"
#include "swarm/experiments.hpp"
#include "swarm/validation.hpp"

using namespace swarm;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag)
      : path(fs::temp_directory_path() / ("swarm-test-" + tag + "-" + std::to_string(::getpid()))) {
    fs::remove_all(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string first_line(const fs::path& p) {
  std::ifstream in(p);
  std::string line;
  std::getline(in, line);
  return line;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::invalid_argument;
}

json small_cdf(const fs::path& out, unsigned workers) {
  return {{"kind", "extinction_cdf"},
          {"name", "cdf"},
          {"replicates", 60},
          {"seed", 99},
          {"workers", workers},
          {"output", out.string()},
          {"t_grid", {{"t_max", 10.0}, {"points", 20}}},
          {"params", {{"n_total", 60}, {"lambda", 0.03}, {"mu", 1.0}, {"y0", 1}, {"r", {1.0, 0.6}}}}};
}

}  // namespace

TEST_CASE("config parsing") {
  const auto c = parse_config(json{{"kind", "phase_sweep"}});
  CHECK(c.kind == ExperimentKind::phase_sweep);
  CHECK(c.name == "phase_sweep");
  CHECK(c.replicates == 1000);
  CHECK(c.master_seed == 1);

  const auto d = parse_config(json{{"kind", "hybrid"},
                                   {"replicates", 7},
                                   {"seed", 42},
                                   {"t_grid", {{"t_max", 3.0}, {"points", 6}}}});
  CHECK(d.replicates == 7);
  CHECK(d.master_seed == 42);
  CHECK(d.t_max == 3.0);
  CHECK(d.t_points == 6);

  json round;
  to_json(round, d);
  const auto e = parse_config(round);
  CHECK(e.kind == d.kind);
  CHECK(e.replicates == d.replicates);
  CHECK(e.t_points == d.t_points);

  for (auto kind : {ExperimentKind::extinction_cdf, ExperimentKind::oracle_check,
                    ExperimentKind::control_utility})
    CHECK(parse_experiment_kind(to_string(kind)) == kind);

  CHECK(code_of([] { parse_config(json::object()); }) == ErrorCode::config_parse);
  CHECK(code_of([] { parse_config(json{{"kind", "nope"}}); }) == ErrorCode::config_parse);
  CHECK(code_of([] { parse_config(json{{"kind", "hybrid"}, {"replicates", 0}}); }) ==
        ErrorCode::config_parse);
  CHECK(code_of([] { parse_config(json{{"kind", "hybrid"}, {"seed", -1}}); }) ==
        ErrorCode::config_parse);
  CHECK(code_of([] { parse_config(json::array()); }) == ErrorCode::config_parse);
}

TEST_CASE("overrides") {
  json cfg = figure_config("3");
  apply_overrides(cfg, {{"seed", 5}, {"t_grid.t_max", 4.0}, {"lambda", 0.01}, {"r", {1.0}}});
  CHECK(cfg["seed"] == 5);
  CHECK(cfg["t_grid"]["t_max"] == 4.0);
  CHECK(cfg["t_grid"]["points"] == 50);
  CHECK(cfg["params"]["lambda"] == 0.01);
  CHECK(cfg["params"]["r"].size() == 1);
  CHECK(cfg["params"]["n_total"] == 400);
}

TEST_CASE("figure presets") {
  const auto ids = figure_ids();
  for (const char* id : {"1", "1bis", "3", "4", "5", "6", "7", "8", "9"})
    CHECK(std::find(ids.begin(), ids.end(), id) != ids.end());
  for (const auto& id : ids) CHECK_NOTHROW(parse_config(figure_config(id)));
  CHECK(code_of([] { figure_config("2"); }) == ErrorCode::unknown_figure);
  CHECK(code_of([] { figure("10"); }) == ErrorCode::unknown_figure);
  CHECK(figure_config("9")["params"]["implementer_choice"].size() == 2);
  CHECK(figure_config("5")["params"]["lambda"] == 0.0025);
}

TEST_CASE("extinction_cdf output") {
  TempDir a("cdf-a"), b("cdf-b");
  const auto ra = run(parse_config(small_cdf(a.path, 1)));
  const auto rb = run(parse_config(small_cdf(b.path, 3)));
  REQUIRE(ra.files.size() == 1);
  CHECK(first_line(ra.files[0]) ==
        "t,empirical_cdf_r1,empirical_cdf_r06,branching_cdf_r1,branching_cdf_r06");
  CHECK(slurp(ra.files[0]) == slurp(rb.files[0]));

  const auto sidecar = json::parse(slurp(ra.sidecar));
  CHECK(sidecar["version"] == std::string(version()));
  CHECK(sidecar["config"]["seed"] == 99);
  CHECK(sidecar["config"]["params"]["n_total"] == 60);
  CHECK(sidecar["checks"].size() == ra.checks.size());
  CHECK(sidecar["passed"] == ra.passed());
}

TEST_CASE("phase_sweep and fixed_rate_sweep outputs") {
  TempDir dir("sweep");
  const auto ps = run(parse_config(json{
      {"kind", "phase_sweep"},
      {"output", dir.path.string()},
      {"params", {{"y0", 0.05}, {"xc0", {0.3, 0.9}}, {"points", 21}}}}));
  REQUIRE(ps.files.size() == 2);
  CHECK(ps.files[0].filename() == "phase_sweep_xc0_03.csv");
  CHECK(first_line(ps.files[0]) == "theta_xc0,xc_inf,xf_inf,y_max,tau");
  CHECK(ps.passed());

  const auto fr = run(parse_config(json{
      {"kind", "fixed_rate_sweep"}, {"output", dir.path.string()}, {"params", {{"x0", 0.8}}}}));
  REQUIRE(fr.files.size() == 1);
  CHECK(first_line(fr.files[0]) == "xi,x0,terminal_fraction,y_max,t_peak,tau");
  CHECK(fr.passed());
}

TEST_CASE("malformed parameters are config errors") {
  TempDir dir("bad");
  json cfg = {{"kind", "extinction_cdf"}, {"output", dir.path.string()}};
  cfg["params"] = {{"lambda", "fast"}};
  CHECK(code_of([&] { run(parse_config(cfg)); }) == ErrorCode::config_parse);
  cfg["params"] = {{"n_total", "many"}, {"lambda", 0.01}, {"mu", 1.0}, {"y0", 1}};
  CHECK(code_of([&] { run(parse_config(cfg)); }) == ErrorCode::config_parse);
}

TEST_CASE("validation suites") {
  CHECK(suite_criteria("all").size() == kCriterionCount);
  CHECK(suite_criteria("dominance") == std::vector<int>{3});
  CHECK(suite_criteria("12") == std::vector<int>{12});
  CHECK(code_of([] { suite_criteria("nope"); }) == ErrorCode::config_parse);
  CHECK(suite_names().size() == kCriterionCount + 1);
  for (int id = 1; id <= kCriterionCount; ++id) CHECK(criterion_name(id) != "unknown");

  const auto doc = report("extinction_time_identity", {});
  CHECK(doc["passed"] == true);
  REQUIRE(doc["criteria"].size() == 1);
  CHECK(doc["criteria"][0]["id"] == 2);
}
