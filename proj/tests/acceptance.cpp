// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <cstdio>
#include <cstdlib>
#include <string>

#include "swarm/validation.hpp"

int main(int argc, char** argv) {
  swarm::ValidationOptions options;
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--seed" && i + 1 < argc) options.seed = std::strtoull(argv[++i], nullptr, 10);
    else if (arg == "--workers" && i + 1 < argc) options.workers = std::atoi(argv[++i]);
    else only = std::atoi(arg.c_str());
  }
  int failed = 0;
  for (int id = 1; id <= swarm::kCriterionCount; ++id) {
    if (only && id != only) continue;
    const auto r = swarm::run_criterion(id, options);
    std::printf("[%s] %2d %-24s %s\n", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(),
                r.summary.c_str());
    std::fflush(stdout);
    if (!r.passed) ++failed;
  }
  std::printf("%d of %d criteria failed\n", failed, only ? 1 : swarm::kCriterionCount);
  return failed == 0 ? 0 : 1;
}
