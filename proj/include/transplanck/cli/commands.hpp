#pragma once

#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "transplanck/cli/config.hpp"

namespace transplanck::cli {

using Cell = std::variant<double, long long, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

struct CommandOutput {
  Table table;
  nlohmann::json summary = nlohmann::json::object();
  /// Emit columns/rows in JSON as well (multi-row results).
  bool rows_in_json = true;
  Format default_format = Format::Csv;
};

CommandOutput cmd_dispersion_curve(const RunConfig& cfg);
CommandOutput cmd_ratio(const RunConfig& cfg);
CommandOutput cmd_scan(const RunConfig& cfg);
CommandOutput cmd_bogoliubov(const RunConfig& cfg);
CommandOutput cmd_reconstruct(const RunConfig& cfg);
CommandOutput cmd_find_kh(const RunConfig& cfg);
CommandOutput cmd_find_hump(const RunConfig& cfg);

/// Composite curve grid: k = 0, log-spaced from k_min_log k_p up to
/// min(0.01 k_p, k_max), then linear up to k_max inclusive.
std::vector<double> curve_grid(double k_p, double k_min_log, double k_max, int samples);

/// %.17g; "nan" / "inf" / "-inf" for non-finite values.
std::string format_number(double v);

std::string to_csv(const Table& t);

}  // namespace transplanck::cli
