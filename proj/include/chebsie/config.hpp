#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "chebsie/momentum_solver.hpp"

namespace chebsie {

enum class Command { solve, scan, compare, reproduce };
enum class OutputFormat { csv, json, pretty };
enum class PotentialKind { linear, coulomb, cornell };

Command parse_command(std::string_view name);
std::string_view to_string(Command command);
OutputFormat parse_format(std::string_view name);
std::string_view to_string(OutputFormat format);
PotentialKind parse_potential_kind(std::string_view name);
std::string_view to_string(PotentialKind kind);

/// Flattened key-value document. Keys are "section.key"; top-level keys are
/// filed under their canonical section, so "N = 80" and "[solver] N = 80"
/// land on the same entry.
using ConfigDocument = std::map<std::string, std::string>;

/// Parses the INI-like text format:
///
///   # comment
///   [section]
///   key = value
///
/// Throws ConfigError on malformed lines, unknown sections or keys (all
/// offenders listed), and duplicate keys.
ConfigDocument parse_document(std::string_view text);

/// Sets one entry by bare or dotted key, e.g. "sigma" or "solver.sigma".
/// Later settings override earlier ones.
void set_entry(ConfigDocument& doc, std::string_view key, std::string value);

/// Physical units for quarkonium runs: a = 1/sqrt(beta), energies in
/// sqrt(beta), masses in GeV.
struct PhysicalUnits {
  double beta = 0.0;   // GeV^2
  double mass1 = 0.0;  // GeV
  double mass2 = 0.0;  // GeV

  double energy_scale() const;            // sqrt(beta), GeV
  double reduced_mass_times_a() const;    // mu a
  double mass_gev(double epsilon) const;  // m1 + m2 + epsilon sqrt(beta)
};

struct RunConfig {
  Command command = Command::solve;
  int table = 0;  // reproduce only: 1, 2 or 3

  PotentialKind potential = PotentialKind::linear;
  double alpha = 0.0;
  double s = 1.0;  // 1/(2 mu a); derived for physical runs
  std::optional<PhysicalUnits> physical;
  KineticMode kinetic = KineticMode::nonrelativistic;

  std::vector<int> ells{0};
  int levels = 5;
  std::vector<int> orders{100};
  double sigma = 1.0;
  MappingKind mapping = MappingKind::rational;

  // Whether ell / N were given explicitly (reproduce uses them as filters).
  bool ells_given = false;
  bool orders_given = false;

  OutputFormat format = OutputFormat::pretty;
  std::string out;  // empty: stdout

  /// Dimensionless problem for one partial wave.
  PotentialParams params(int ell) const;
};

/// Validates the document and fills defaults. Throws ConfigError naming the
/// offending field.
RunConfig build_config(const ConfigDocument& doc);

/// parse_document followed by build_config.
RunConfig parse_config(std::string_view text);

}  // namespace chebsie
