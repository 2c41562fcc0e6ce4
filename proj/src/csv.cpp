#include "swarm/csv.hpp"

#include <fmt/format.h>

#include "swarm/error.hpp"

namespace swarm {
namespace {

std::string quote(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string format_csv_field(const CsvField& field) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::string>) {
          return quote(v);
        } else {
          return fmt::format("{}", v);
        }
      },
      field);
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header)
    : path_(path), columns_(header.size()) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  out_.open(path, std::ios::binary | std::ios::trunc);
  if (!out_) throw Error(ErrorCode::io_error, "cannot open " + path.string() + " for writing");
  std::vector<std::string> cells;
  for (const auto& h : header) cells.push_back(quote(h));
  write_line(cells);
}

void CsvWriter::row(const std::vector<CsvField>& fields) {
  if (fields.size() != columns_)
    throw Error(ErrorCode::invalid_argument, "CSV row width does not match header");
  std::vector<std::string> cells;
  cells.reserve(fields.size());
  for (const auto& f : fields) cells.push_back(format_csv_field(f));
  write_line(cells);
}

void CsvWriter::write_line(const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) out_ << ',';
    out_ << cells[i];
  }
  out_ << '\n';
  if (!out_) throw Error(ErrorCode::io_error, "write failed: " + path_.string());
}

void write_trajectory_csv(const std::filesystem::path& path, const GeneralTrajectory& tr) {
  CsvWriter csv(path, {"t", "y", "xc", "xf"});
  for (const auto& s : tr.events) csv.row({s.t, s.y, s.xc, s.xf});
}

void write_trajectory_csv(const std::filesystem::path& path, const FixedRateTrajectory& tr) {
  CsvWriter csv(path, {"t", "y", "x"});
  for (const auto& s : tr.events) csv.row({s.t, s.y, s.x});
}

void write_ensemble_csv(const std::filesystem::path& path, const EnsembleResult& result) {
  CsvWriter csv(path, {"replicate", "seed", "extinction_time", "final_xc", "final_xf",
                       "max_y", "peak_time"});
  for (const auto& r : result.records)
    csv.row({static_cast<std::uint64_t>(r.replicate), r.seed, r.extinction_time, r.final_xc,
             r.final_xf, r.max_y, r.peak_time});
}

}  // namespace swarm
