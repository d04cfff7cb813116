#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "chebsie/config.hpp"

namespace chebsie {

/// One emitted level. Optional fields are absent when the command does not
/// produce them.
struct ReportRow {
  std::string label;  // campaign block, e.g. "charm"; empty for plain runs
  int ell = 0;
  int n = 0;
  int N = 0;
  double sigma = 0.0;
  double epsilon = 0.0;
  std::optional<double> mass_gev;
  double residual = 0.0;
  double imag = 0.0;
  std::optional<double> coordinate;  // configuration-space epsilon (compare, table 3)
  std::optional<double> reference;   // stored value the row is checked against
  std::optional<double> delta;       // deviation used for the check (see Report::metric)
  std::optional<bool> pass;          // absent for informational rows
};

struct Report {
  Command command = Command::solve;
  int table = 0;
  std::string title;
  std::string metric;  // meaning of ReportRow::delta
  std::vector<ReportRow> rows;
  std::vector<std::string> diagnostics;
  int exit_status = 0;  // 0 ok, 3 numerical failure or failed check
};

inline constexpr double kCompareTolerance = 1e-5;

/// Executes the configured command. Solver failures are caught and reported
/// through diagnostics and exit_status 3; ConfigError propagates.
Report run(const RunConfig& config);

std::string to_csv(const Report& report);
std::string to_json(const Report& report);
std::string to_pretty(const Report& report);
std::string format_report(const Report& report, OutputFormat format);

/// Inverse of to_json; numeric fields survive bit-exactly.
Report report_from_json(std::string_view text);

}  // namespace chebsie
