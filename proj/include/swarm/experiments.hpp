#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "swarm/model.hpp"

namespace swarm {

std::string_view version();

enum class ExperimentKind {
  extinction_cdf,
  early_extinction_mean,
  terminal_fraction,
  phase_sweep,
  fixed_rate_sweep,
  control_utility,
  hybrid,
  oracle_check,
};

std::string_view to_string(ExperimentKind kind);
/// Throws config_parse for an unknown name.
ExperimentKind parse_experiment_kind(std::string_view name);

/// One experiment. `params` holds the kind-specific model parameters; scalar
/// entries may be replaced by arrays where a kind sweeps over them.
struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::extinction_cdf;
  /// Stem of the output files; defaults to the kind name.
  std::string name;
  nlohmann::json params = nlohmann::json::object();
  std::size_t replicates = 1000;
  std::uint64_t master_seed = 1;
  std::filesystem::path output_dir = "out";
  /// Sampling grid 0, t_max/points, ..., t_max where a kind needs one.
  double t_max = 25.0;
  std::size_t t_points = 50;
  unsigned workers = 0;
};

void to_json(nlohmann::json& j, const ExperimentConfig& c);
/// Throws config_parse on missing or malformed fields.
void from_json(const nlohmann::json& j, ExperimentConfig& c);
ExperimentConfig parse_config(const nlohmann::json& j);

/// Merges key=value style overrides into a config document. Keys naming a
/// top-level field (or a dotted path such as t_grid.t_max) replace it; any
/// other key lands in "params".
void apply_overrides(nlohmann::json& config, const nlohmann::json& overrides);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct RunResult {
  std::vector<std::filesystem::path> files;
  std::filesystem::path sidecar;
  nlohmann::json summary;
  std::vector<CheckResult> checks;

  bool passed() const;
};

/// Runs the experiment, writing CSV data and a JSON sidecar (resolved config,
/// version, derived quantities, embedded check results) to the output
/// directory. Deterministic for a fixed master seed and any worker count.
RunResult run(const ExperimentConfig& config);

std::vector<std::string> figure_ids();
/// Preset config for a figure; throws unknown_figure.
nlohmann::json figure_config(std::string_view id);
RunResult figure(std::string_view id, const nlohmann::json& overrides = nlohmann::json::object());

/// Cooperative peers a run must serve to count as a major outbreak: half the
/// mean-field outbreak size when theta*xc0 > 1, zero (every run counts)
/// otherwise.
double major_outbreak_threshold(const GeneralParams& p);

}  // namespace swarm
