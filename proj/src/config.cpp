#include "chebsie/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>

#include "chebsie/errors.hpp"

namespace chebsie {

namespace {

struct KeySpec {
  const char* section;
  const char* key;
};

constexpr KeySpec kKeys[] = {
    {"run", "command"},       {"run", "table"},         {"run", "format"},
    {"run", "out"},           {"potential", "potential"}, {"potential", "alpha"},
    {"potential", "s"},       {"potential", "beta"},    {"potential", "mass"},
    {"potential", "mass1"},   {"potential", "mass2"},   {"potential", "kinetic"},
    {"solver", "ell"},        {"solver", "levels"},     {"solver", "N"},
    {"solver", "sigma"},      {"solver", "mapping"},
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

const KeySpec* find_key(std::string_view key) {
  for (const auto& k : kKeys) {
    if (key == k.key) return &k;
  }
  return nullptr;
}

bool is_section(std::string_view name) {
  return name == "run" || name == "potential" || name == "solver";
}

// Resolves "key" or "section.key" to the canonical "section.key"; empty when
// the key is unknown or filed under the wrong section.
std::string canonical(std::string_view section, std::string_view key) {
  const auto dot = key.find('.');
  if (dot != std::string_view::npos) {
    if (!section.empty()) return {};
    section = key.substr(0, dot);
    key = key.substr(dot + 1);
  }
  const KeySpec* spec = find_key(key);
  if (spec == nullptr) return {};
  if (!section.empty() && section != spec->section) return {};
  return std::string(spec->section) + "." + spec->key;
}

double to_double(const std::string& field, std::string_view text) {
  double v = 0.0;
  const auto t = trim(text);
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(v)) {
    throw ConfigError(field + ": expected a number, got '" + std::string(text) + "'");
  }
  return v;
}

int to_int(const std::string& field, std::string_view text) {
  int v = 0;
  const auto t = trim(text);
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size()) {
    throw ConfigError(field + ": expected an integer, got '" + std::string(text) + "'");
  }
  return v;
}

std::vector<int> to_int_list(const std::string& field, std::string_view text) {
  std::string normalized(text);
  std::replace(normalized.begin(), normalized.end(), ',', ' ');
  std::istringstream in(normalized);
  std::vector<int> out;
  for (std::string item; in >> item;) out.push_back(to_int(field, item));
  if (out.empty()) throw ConfigError(field + ": empty list");
  return out;
}

}  // namespace

Command parse_command(std::string_view name) {
  if (name == "solve") return Command::solve;
  if (name == "scan") return Command::scan;
  if (name == "compare") return Command::compare;
  if (name == "reproduce") return Command::reproduce;
  throw ConfigError("command: unknown value '" + std::string(name) +
                    "' (solve|scan|compare|reproduce)");
}

std::string_view to_string(Command command) {
  switch (command) {
    case Command::solve: return "solve";
    case Command::scan: return "scan";
    case Command::compare: return "compare";
    case Command::reproduce: return "reproduce";
  }
  return "?";
}

OutputFormat parse_format(std::string_view name) {
  if (name == "csv") return OutputFormat::csv;
  if (name == "json") return OutputFormat::json;
  if (name == "pretty") return OutputFormat::pretty;
  throw ConfigError("format: unknown value '" + std::string(name) + "' (csv|json|pretty)");
}

std::string_view to_string(OutputFormat format) {
  switch (format) {
    case OutputFormat::csv: return "csv";
    case OutputFormat::json: return "json";
    case OutputFormat::pretty: return "pretty";
  }
  return "?";
}

PotentialKind parse_potential_kind(std::string_view name) {
  if (name == "linear") return PotentialKind::linear;
  if (name == "coulomb") return PotentialKind::coulomb;
  if (name == "cornell") return PotentialKind::cornell;
  throw ConfigError("potential: unknown value '" + std::string(name) +
                    "' (linear|coulomb|cornell)");
}

std::string_view to_string(PotentialKind kind) {
  switch (kind) {
    case PotentialKind::linear: return "linear";
    case PotentialKind::coulomb: return "coulomb";
    case PotentialKind::cornell: return "cornell";
  }
  return "?";
}

ConfigDocument parse_document(std::string_view text) {
  ConfigDocument doc;
  std::vector<std::string> unknown;
  std::string section;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError("line " + std::to_string(line_no) + ": unterminated section header");
      }
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (!is_section(section)) {
        throw ConfigError("line " + std::to_string(line_no) + ": unknown section [" + section +
                          "] (run|potential|solver)");
      }
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    const std::string name = canonical(section, key);
    if (name.empty()) {
      unknown.push_back(section.empty() ? std::string(key) : section + "." + std::string(key));
      continue;
    }
    if (value.empty()) {
      throw ConfigError("line " + std::to_string(line_no) + ": " + name + " has no value");
    }
    if (!doc.emplace(name, std::string(value)).second) {
      throw ConfigError("line " + std::to_string(line_no) + ": duplicate key " + name);
    }
  }
  if (!unknown.empty()) {
    std::string msg = "unknown keys:";
    for (const auto& k : unknown) msg += " " + k;
    throw ConfigError(msg);
  }
  return doc;
}

void set_entry(ConfigDocument& doc, std::string_view key, std::string value) {
  const std::string name = canonical({}, trim(key));
  if (name.empty()) throw ConfigError("unknown keys: " + std::string(key));
  doc[name] = std::string(trim(value));
}

double PhysicalUnits::energy_scale() const { return std::sqrt(beta); }

double PhysicalUnits::reduced_mass_times_a() const {
  return mass1 * mass2 / (mass1 + mass2) / energy_scale();
}

double PhysicalUnits::mass_gev(double epsilon) const {
  return mass1 + mass2 + epsilon * energy_scale();
}

PotentialParams RunConfig::params(int ell) const {
  PotentialParams p;
  p.ell = ell;
  p.alpha = potential == PotentialKind::linear ? 0.0 : alpha;
  p.s = s;
  p.include_linear = potential != PotentialKind::coulomb;
  p.include_coulomb = potential != PotentialKind::linear;
  p.kinetic = kinetic;
  if (physical) {
    p.am1 = physical->mass1 / physical->energy_scale();
    p.am2 = physical->mass2 / physical->energy_scale();
  }
  return p;
}

RunConfig build_config(const ConfigDocument& doc) {
  RunConfig cfg;
  auto get = [&](const char* name) -> const std::string* {
    const auto it = doc.find(name);
    return it == doc.end() ? nullptr : &it->second;
  };

  if (auto v = get("run.command")) cfg.command = parse_command(*v);
  if (auto v = get("run.format")) cfg.format = parse_format(*v);
  if (auto v = get("run.out")) cfg.out = *v;
  if (auto v = get("run.table")) {
    if (cfg.command != Command::reproduce) {
      throw ConfigError("run.table: only meaningful for command = reproduce");
    }
    std::string_view t = *v;
    if (t.starts_with("table")) t.remove_prefix(5);
    cfg.table = to_int("run.table", t);
    if (cfg.table < 1 || cfg.table > 3) throw ConfigError("run.table: must be 1, 2 or 3");
  }
  if (cfg.command == Command::reproduce) {
    if (cfg.table == 0) throw ConfigError("missing required field run.table for reproduce");
    for (const auto& [key, value] : doc) {
      if (key.starts_with("potential.") || key == "solver.sigma" || key == "solver.mapping") {
        throw ConfigError(key + ": reproduce runs a fixed campaign and takes no " + key);
      }
    }
  }

  if (auto v = get("solver.ell")) {
    cfg.ells = to_int_list("solver.ell", *v);
    cfg.ells_given = true;
    for (int l : cfg.ells) {
      if (l < 0) throw ConfigError("solver.ell: must be >= 0, got " + std::to_string(l));
    }
  }
  if (auto v = get("solver.levels")) {
    cfg.levels = to_int("solver.levels", *v);
    if (cfg.levels < 1) throw ConfigError("solver.levels: must be >= 1");
  }
  if (auto v = get("solver.N")) {
    cfg.orders = to_int_list("solver.N", *v);
    cfg.orders_given = true;
    for (int n : cfg.orders) {
      if (n < 2) {
        throw ConfigError("solver.N: invalid order " + std::to_string(n) + " (need N >= 2)");
      }
    }
  }
  if (cfg.command == Command::scan) {
    if (cfg.orders.size() < 2) throw ConfigError("solver.N: scan needs at least two orders");
    for (std::size_t k = 1; k < cfg.orders.size(); ++k) {
      if (cfg.orders[k] <= cfg.orders[k - 1]) {
        throw ConfigError("solver.N: scan orders must be strictly increasing");
      }
    }
  }
  if (auto v = get("solver.sigma")) {
    cfg.sigma = to_double("solver.sigma", *v);
    if (!(cfg.sigma > 0.0)) throw ConfigError("solver.sigma: must be positive");
  }
  if (auto v = get("solver.mapping")) {
    try {
      cfg.mapping = parse_mapping_kind(*v);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("solver.mapping: ") + e.what());
    }
  }
  if (cfg.command == Command::reproduce) return cfg;

  if (auto v = get("potential.potential")) cfg.potential = parse_potential_kind(*v);
  if (auto v = get("potential.kinetic")) {
    try {
      cfg.kinetic = parse_kinetic_mode(*v);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("potential.kinetic: ") + e.what());
    }
  }

  const auto alpha = get("potential.alpha");
  if (cfg.potential == PotentialKind::linear) {
    if (alpha && to_double("potential.alpha", *alpha) != 0.0) {
      throw ConfigError("potential.alpha: the linear potential has no Coulomb term; use cornell");
    }
  } else {
    if (!alpha) {
      throw ConfigError("missing required field potential.alpha for potential = " +
                        std::string(to_string(cfg.potential)));
    }
    cfg.alpha = to_double("potential.alpha", *alpha);
    if (!(cfg.alpha > 0.0)) throw ConfigError("potential.alpha: must be positive");
  }

  const auto beta = get("potential.beta");
  const auto mass = get("potential.mass");
  const auto mass1 = get("potential.mass1");
  const auto mass2 = get("potential.mass2");
  if (beta) {
    if (get("potential.s")) {
      throw ConfigError("potential.s: derived from beta and the masses in a physical run");
    }
    PhysicalUnits units;
    units.beta = to_double("potential.beta", *beta);
    if (!(units.beta > 0.0)) throw ConfigError("potential.beta: must be positive");
    if (mass && (mass1 || mass2)) {
      throw ConfigError("potential.mass: give either mass or mass1/mass2, not both");
    }
    if (mass) {
      units.mass1 = units.mass2 = to_double("potential.mass", *mass);
    } else if (mass1 && mass2) {
      units.mass1 = to_double("potential.mass1", *mass1);
      units.mass2 = to_double("potential.mass2", *mass2);
    } else {
      throw ConfigError("missing required field potential.mass (or mass1 and mass2) for beta");
    }
    if (!(units.mass1 > 0.0) || !(units.mass2 > 0.0)) {
      throw ConfigError("potential.mass: quark masses must be positive");
    }
    cfg.s = 1.0 / (2.0 * units.reduced_mass_times_a());
    cfg.physical = units;
  } else {
    if (mass || mass1 || mass2) {
      throw ConfigError("potential.mass: masses need potential.beta to set the units");
    }
    if (auto v = get("potential.s")) cfg.s = to_double("potential.s", *v);
    if (!(cfg.s > 0.0)) throw ConfigError("potential.s: must be positive");
  }

  if (cfg.kinetic == KineticMode::salpeter) {
    if (!cfg.physical) throw ConfigError("potential.kinetic: salpeter needs beta and masses");
    if (cfg.command == Command::compare) {
      throw ConfigError("potential.kinetic: compare needs the nonrelativistic kinetic term");
    }
  }
  return cfg;
}

RunConfig parse_config(std::string_view text) { return build_config(parse_document(text)); }

}  // namespace chebsie
