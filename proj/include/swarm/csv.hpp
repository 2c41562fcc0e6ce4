#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "swarm/ctmc.hpp"
#include "swarm/ensemble.hpp"

namespace swarm {

/// Field formatting: integers verbatim, doubles as the shortest string that
/// round-trips, strings quoted when they contain a comma, quote or newline.
using CsvField = std::variant<std::string, double, std::int64_t, std::uint64_t>;

std::string format_csv_field(const CsvField& field);

class CsvWriter {
 public:
  /// Creates parent directories; throws io_error on failure.
  CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);

  void row(const std::vector<CsvField>& fields);
  const std::filesystem::path& path() const { return path_; }

 private:
  void write_line(const std::vector<std::string>& cells);

  std::filesystem::path path_;
  std::ofstream out_;
  std::size_t columns_;
};

/// Columns t,y,xc,xf.
void write_trajectory_csv(const std::filesystem::path& path, const GeneralTrajectory& tr);
/// Columns t,y,x.
void write_trajectory_csv(const std::filesystem::path& path, const FixedRateTrajectory& tr);
/// Columns replicate,seed,extinction_time,final_xc,final_xf,max_y,peak_time.
void write_ensemble_csv(const std::filesystem::path& path, const EnsembleResult& result);

}  // namespace swarm
