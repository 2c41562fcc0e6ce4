#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace swarm {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  /// One-line human-readable outcome.
  std::string summary;
  nlohmann::json details = nlohmann::json::object();
};

struct ValidationOptions {
  std::uint64_t seed = 1;
  /// 0 selects the hardware concurrency.
  unsigned workers = 0;
};

inline constexpr int kCriterionCount = 12;

std::string_view criterion_name(int id);

/// Named suites: one per criterion (by name or number) plus "all".
std::vector<std::string> suite_names();
/// Criteria of a suite; throws config_parse for an unknown name.
std::vector<int> suite_criteria(std::string_view suite);

CriterionResult run_criterion(int id, const ValidationOptions& options = {});

/// {"suite", "passed", "criteria": [{id, name, passed, summary, details}]}
nlohmann::json report(std::string_view suite, const ValidationOptions& options = {});

nlohmann::json to_json(const CriterionResult& r);

}  // namespace swarm
