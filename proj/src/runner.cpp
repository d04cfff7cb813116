#include "chebsie/runner.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "chebsie/coordinate_oracle.hpp"
#include "chebsie/errors.hpp"

namespace chebsie {

namespace {

using nlohmann::json;

// Stored references for the reproduction campaigns.

// Relative errors at N = 40, 60, 80 (one significant digit).
constexpr double kTable1[4][3][5] = {
    {{4e-12, 3e-10, 4e-9, 3e-8, 2e-7}, {2e-13, 1e-11, 2e-10, 1e-9, 6e-9}, {2e-14, 1e-12, 2e-11, 1e-10, 6e-10}},
    {{8e-13, 2e-13, 3e-9, 6e-8, 5e-7}, {2e-14, 4e-13, 3e-12, 1e-11, 2e-10}, {2e-15, 4e-14, 3e-13, 1e-12, 2e-12}},
    {{3e-12, 2e-10, 2e-7, 5e-6, 8e-5}, {3e-15, 6e-14, 1e-12, 7e-10, 2e-8}, {2e-16, 2e-15, 4e-14, 4e-13, 6e-12}},
    {{2e-9, 2e-7, 9e-6, 3e-4, 3e-3}, {1e-12, 3e-12, 8e-11, 2e-8, 6e-7}, {1e-13, 2e-12, 6e-12, 1e-10, 5e-10}},
};
constexpr int kTable1Orders[3] = {40, 60, 80};

struct Table2Row {
  int ell;
  int N;
  bool gated;  // false: informational only
  std::array<double, 5> eps;
};

constexpr Table2Row kTable2[] = {
    {0, 50, true, {2.338034, 4.087928, 5.520416, 6.786654, 7.943940}},
    {0, 100, true, {2.338099, 4.087947, 5.520543, 6.786702, 7.944111}},
    {0, 150, true, {2.338105, 4.087949, 5.520555, 6.786706, 7.944127}},
    {0, 200, true, {2.338106, 4.087949, 5.520558, 6.786707, 7.944131}},
    {0, 250, true, {2.338107, 4.087949, 5.520559, 6.786708, 7.944132}},
    {0, 300, true, {2.338107, 4.087949, 5.520559, 6.786708, 7.944133}},
    {1, 50, false, {3.361254, 4.884452, 6.207617, 7.405649, 8.515212}},
    {1, 100, true, {3.361255, 4.884452, 6.207623, 7.405665, 8.515234}},
    {2, 50, false, {4.248183, 5.629693, 6.868774, 8.009828, 9.075383}},
    {2, 100, true, {4.248182, 5.629708, 6.868883, 8.009703, 9.077003}},
    {3, 50, false, {5.050918, 6.331874, 7.504206, 8.593338, 9.632163}},
    {3, 80, true, {5.050926, 6.332115, 7.504646, 8.597127, 9.627263}},
};

constexpr std::array<double, 5> kTable2Exact[4] = {
    {2.338107, 4.087949, 5.520560, 6.786708, 7.944134},
    {3.361254, 4.884452, 6.207623, 7.405665, 8.515234},
    {4.248182, 5.629708, 6.868883, 8.009703, 9.077003},
    {5.050926, 6.332115, 7.504646, 8.597117, 9.627267},
};

constexpr double kTable2CellTolerance = 1.5e-6;
constexpr double kTable2ExactTolerance = 2e-6;

struct Quarkonium {
  const char* label;
  double mass;
  double upper[3][3];  // momentum space, [ell][n]
  double lower[3][3];  // configuration space
};

constexpr double kCornellAlpha = 0.50667;
constexpr double kCornellBeta = 0.1694;

constexpr Quarkonium kTable3[] = {
    {"charm", 1.37,
     {{3.0869, 3.6748, 4.1094}, {3.4988, 3.9544, 4.3388}, {3.7868, 4.1868, 4.5407}},
     {{3.0869, 3.6748, 4.1093}, {3.4987, 3.9543, 4.3388}, {3.7868, 4.1868, 4.5407}}},
    {"bottom", 4.79,
     {{9.4550, 10.0105, 10.3423}, {9.9171, 10.2582, 10.5318}, {10.1555, 10.4385, 10.6838}},
     {{9.4547, 10.0104, 10.3422}, {9.9170, 10.2581, 10.5318}, {10.1554, 10.4385, 10.6410}}},
};

constexpr double kTable3Tolerance = 1e-3;       // GeV, against the momentum-space values
constexpr double kTable3OracleTolerance = 5e-3;  // GeV, the disputed cell against our oracle

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string fmt_eps(double v) { return fmt("%.7g", v); }
std::string fmt_gev(double v) { return fmt("%.4f", v); }
std::string fmt_sci(double v) { return fmt("%.1e", v); }

double oracle_epsilon(const PotentialParams& p, int n) {
  RadialProblem rp;
  rp.ell = p.ell;
  rp.alpha = p.include_coulomb ? p.alpha : 0.0;
  rp.slope = p.include_linear ? 1.0 : 0.0;
  rp.mu_a = 1.0 / (2.0 * p.s);
  rp.level = n;
  return solve_radial(rp).epsilon;
}

struct Job {
  std::string label;
  PotentialParams params;
  int N;
  double sigma;
  MappingKind mapping = MappingKind::rational;
  int levels;
  std::optional<PhysicalUnits> units;
};

// Solves one job; appends rows, or a diagnostic on failure. Returns false if
// fewer levels than requested were produced.
bool solve_job(const Job& job, Report& report, std::vector<ReportRow>& rows) {
  const std::string where = (job.label.empty() ? "" : job.label + " ") +
                            "ell=" + std::to_string(job.params.ell) +
                            " N=" + std::to_string(job.N);
  try {
    const auto res = solve_levels(job.params, job.N, Mapping{job.mapping, job.sigma}, job.levels);
    for (const auto& level : res.selection.levels) {
      ReportRow row;
      row.label = job.label;
      row.ell = level.ell;
      row.n = level.n;
      row.N = job.N;
      row.sigma = job.sigma;
      row.epsilon = level.epsilon;
      if (job.units) row.mass_gev = job.units->mass_gev(level.epsilon);
      row.residual = level.residual_norm;
      row.imag = level.imag_part;
      rows.push_back(std::move(row));
    }
    if (res.selection.partial) {
      report.diagnostics.push_back(where + ": only " +
                                   std::to_string(res.selection.levels.size()) + " of " +
                                   std::to_string(job.levels) +
                                   " levels passed the eigenpair filters; increase N or adjust sigma");
      return false;
    }
    return true;
  } catch (const NumericalError& e) {
    report.diagnostics.push_back(where + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    report.diagnostics.push_back(where + ": " + e.what());
  }
  return false;
}

void attach_oracle(const PotentialParams& p, ReportRow& row, Report& report) {
  try {
    row.coordinate = oracle_epsilon(p, row.n);
  } catch (const NumericalError& e) {
    report.diagnostics.push_back("coordinate solver ell=" + std::to_string(row.ell) +
                                 " n=" + std::to_string(row.n) + ": " + e.what());
  }
}

void run_solve(const RunConfig& cfg, Report& report) {
  report.title = std::string(to_string(cfg.potential)) + " potential, alpha=" +
                 fmt("%g", cfg.alpha) + ", s=" + fmt("%.10g", cfg.s) + ", " +
                 std::string(to_string(cfg.mapping)) + " map";
  bool ok = true;
  for (int ell : cfg.ells) {
    for (int N : cfg.orders) {
      Job job{"", cfg.params(ell), N, cfg.sigma, cfg.mapping, cfg.levels, cfg.physical};
      ok &= solve_job(job, report, report.rows);
    }
  }
  if (!ok) report.exit_status = 3;
}

void run_scan(const RunConfig& cfg, Report& report) {
  report.title = "convergence scan, " + std::string(to_string(cfg.potential)) +
                 " potential, sigma=" + fmt("%g", cfg.sigma);
  report.metric = "|eps_N - eps_previous_N|";
  bool ok = true;
  for (int ell : cfg.ells) {
    std::map<int, double> previous;
    for (int N : cfg.orders) {
      std::vector<ReportRow> rows;
      Job job{"", cfg.params(ell), N, cfg.sigma, cfg.mapping, cfg.levels, cfg.physical};
      ok &= solve_job(job, report, rows);
      std::map<int, double> current;
      for (auto& row : rows) {
        if (auto it = previous.find(row.n); it != previous.end()) {
          row.delta = std::abs(row.epsilon - it->second);
        }
        current[row.n] = row.epsilon;
        report.rows.push_back(std::move(row));
      }
      previous = std::move(current);
    }
  }
  if (!ok) report.exit_status = 3;
}

void run_compare(const RunConfig& cfg, Report& report) {
  report.title = "momentum vs configuration space, " + std::string(to_string(cfg.potential)) +
                 " potential";
  report.metric = "epsilon - coordinate";
  bool ok = true;
  for (int ell : cfg.ells) {
    for (int N : cfg.orders) {
      const auto p = cfg.params(ell);
      std::vector<ReportRow> rows;
      ok &= solve_job({"", p, N, cfg.sigma, cfg.mapping, cfg.levels, cfg.physical}, report, rows);
      for (auto& row : rows) {
        attach_oracle(p, row, report);
        if (row.coordinate) {
          row.delta = row.epsilon - *row.coordinate;
          row.pass = std::abs(*row.delta) <= kCompareTolerance;
        } else {
          ok = false;
        }
        report.rows.push_back(std::move(row));
      }
    }
  }
  if (!ok) report.exit_status = 3;
}

// Restricts a campaign to the ell / N the user asked for.
bool selected(const RunConfig& cfg, int ell, int N) {
  if (cfg.ells_given && std::find(cfg.ells.begin(), cfg.ells.end(), ell) == cfg.ells.end()) {
    return false;
  }
  if (cfg.orders_given &&
      std::find(cfg.orders.begin(), cfg.orders.end(), N) == cfg.orders.end()) {
    return false;
  }
  return true;
}

void reproduce_table1(const RunConfig& cfg, Report& report) {
  report.title = "Coulomb benchmark (alpha=1, s=1): relative errors";
  report.metric = "|eps/exact - 1|";
  bool ok = true;
  for (int ell = 0; ell < 4; ++ell) {
    for (int k = 0; k < 3; ++k) {
      const int N = kTable1Orders[k];
      if (!selected(cfg, ell, N)) continue;
      PotentialParams p;
      p.ell = ell;
      p.alpha = 1.0;
      p.s = 1.0;
      p.include_linear = false;
      std::vector<ReportRow> rows;
      ok &= solve_job({"", p, N, 0.5, MappingKind::rational, 5, std::nullopt}, report, rows);
      for (auto& row : rows) {
        const double exact = hydrogen_energy(row.n, ell, 1.0, 0.5);
        const double rel = std::abs(row.epsilon / exact - 1.0);
        const double stored = kTable1[ell][k][row.n];
        row.reference = exact;
        row.delta = rel;
        row.pass = N == 80 ? rel <= 1e-8 : rel <= std::max(100.0 * stored, 1e-9);
        report.rows.push_back(std::move(row));
      }
    }
  }
  if (!ok) report.exit_status = 3;
}

void reproduce_table2(const RunConfig& cfg, Report& report) {
  report.title = "linear potential, s=1: binding energies";
  report.metric = "epsilon - reference";
  bool ok = true;
  for (const auto& ref : kTable2) {
    if (!selected(cfg, ref.ell, ref.N)) continue;
    PotentialParams p;
    p.ell = ref.ell;
    p.include_coulomb = false;
    const double sigma = ref.ell == 0 ? 0.5 : 1.0;
    std::vector<ReportRow> rows;
    ok &= solve_job({"", p, ref.N, sigma, MappingKind::rational, 5, std::nullopt}, report, rows);
    for (auto& row : rows) {
      row.reference = ref.eps[row.n];
      row.delta = row.epsilon - ref.eps[row.n];
      if (ref.gated) {
        // Higher partial waves are checked against the exact row only: the
        // printed ell=3, N=80 row itself sits 1e-5 away from it.
        const double exact_dev = std::abs(row.epsilon - kTable2Exact[ref.ell][row.n]);
        if (ref.ell > 0) {
          row.pass = exact_dev <= kTable2ExactTolerance;
        } else {
          row.pass = std::abs(*row.delta) <= kTable2CellTolerance &&
                     (ref.N != 300 || exact_dev <= kTable2ExactTolerance);
        }
      }
      report.rows.push_back(std::move(row));
    }
  }
  if (!ok) report.exit_status = 3;
}

void reproduce_table3(const RunConfig& cfg, Report& report) {
  report.title = "quarkonium masses (GeV), alpha=0.50667, beta=0.1694 GeV^2, N=80";
  report.metric = "M - reference (GeV)";
  bool ok = true;
  for (const auto& q : kTable3) {
    PhysicalUnits units{kCornellBeta, q.mass, q.mass};
    for (int ell = 0; ell < 3; ++ell) {
      if (!selected(cfg, ell, 80)) continue;
      PotentialParams p;
      p.ell = ell;
      p.alpha = kCornellAlpha;
      p.s = 1.0 / (2.0 * units.reduced_mass_times_a());
      std::vector<ReportRow> rows;
      ok &= solve_job({q.label, p, 80, 1.0, MappingKind::rational, 3, units}, report, rows);
      for (auto& row : rows) {
        attach_oracle(p, row, report);
        // The stored bottom ell=2 n=2 cell disagrees between the two reference
        // solvers; our configuration-space value decides it.
        const bool disputed = std::string_view(q.label) == "bottom" && ell == 2 && row.n == 2;
        if (disputed) {
          if (row.coordinate) {
            row.reference = units.mass_gev(*row.coordinate);
            row.delta = *row.mass_gev - *row.reference;
            row.pass = std::abs(*row.delta) <= kTable3OracleTolerance;
          } else {
            ok = false;
          }
        } else {
          row.reference = q.upper[ell][row.n];
          row.delta = *row.mass_gev - *row.reference;
          row.pass = std::abs(*row.delta) <= kTable3Tolerance;
        }
        report.rows.push_back(std::move(row));
      }
    }
  }
  if (!ok) report.exit_status = 3;
}

// --- output --------------------------------------------------------------

std::string csv_number(const std::optional<double>& v) { return v ? fmt("%.17g", *v) : ""; }

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> read_optional(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<double>();
}

struct Column {
  std::string header;
  std::vector<std::string> cells;
};

std::string render_columns(const std::vector<Column>& cols) {
  if (cols.empty()) return {};
  std::vector<std::size_t> width;
  for (const auto& c : cols) {
    std::size_t w = c.header.size();
    for (const auto& s : c.cells) w = std::max(w, s.size());
    width.push_back(w);
  }
  std::ostringstream out;
  auto line = [&](auto cell) {
    for (std::size_t k = 0; k < cols.size(); ++k) {
      const std::string s = cell(k);
      out << (k ? "  " : "") << std::string(width[k] - s.size(), ' ') << s;
    }
    out << '\n';
  };
  line([&](std::size_t k) { return cols[k].header; });
  for (std::size_t r = 0; r < cols.front().cells.size(); ++r) {
    line([&](std::size_t k) { return cols[k].cells[r]; });
  }
  return out.str();
}

std::string pretty_rows(const Report& report) {
  const auto& rows = report.rows;
  auto any = [&](auto pred) { return std::any_of(rows.begin(), rows.end(), pred); };
  std::vector<Column> cols;
  auto add = [&](std::string header, auto cell) {
    Column c{std::move(header), {}};
    for (const auto& r : rows) c.cells.push_back(cell(r));
    cols.push_back(std::move(c));
  };
  if (any([](const ReportRow& r) { return !r.label.empty(); })) {
    add("label", [](const ReportRow& r) { return r.label; });
  }
  add("ell", [](const ReportRow& r) { return std::to_string(r.ell); });
  add("n", [](const ReportRow& r) { return std::to_string(r.n); });
  add("N", [](const ReportRow& r) { return std::to_string(r.N); });
  add("sigma", [](const ReportRow& r) { return fmt("%g", r.sigma); });
  add("epsilon", [](const ReportRow& r) { return fmt_eps(r.epsilon); });
  if (any([](const ReportRow& r) { return r.mass_gev.has_value(); })) {
    add("M/GeV", [](const ReportRow& r) { return r.mass_gev ? fmt_gev(*r.mass_gev) : ""; });
  }
  if (any([](const ReportRow& r) { return r.coordinate.has_value(); })) {
    add("coordinate", [](const ReportRow& r) { return r.coordinate ? fmt_eps(*r.coordinate) : ""; });
  }
  if (any([](const ReportRow& r) { return r.delta.has_value(); })) {
    add("delta", [](const ReportRow& r) { return r.delta ? fmt_sci(*r.delta) : ""; });
  }
  if (any([](const ReportRow& r) { return r.pass.has_value(); })) {
    add("check", [](const ReportRow& r) {
      return r.pass ? std::string(*r.pass ? "ok" : "FAIL") : std::string("-");
    });
  }
  add("residual", [](const ReportRow& r) { return fmt_sci(r.residual); });
  return render_columns(cols);
}

// Grid layout: one block per (label, ell), orders down, levels across.
std::string pretty_grid(const Report& report) {
  std::map<std::pair<std::string, int>, std::map<int, std::map<int, const ReportRow*>>> blocks;
  std::vector<std::pair<std::string, int>> order;
  for (const auto& r : report.rows) {
    auto key = std::make_pair(r.label, r.ell);
    if (!blocks.count(key)) order.push_back(key);
    blocks[key][r.N][r.n] = &r;
  }
  std::ostringstream out;
  for (const auto& key : order) {
    const auto& block = blocks[key];
    int levels = 0;
    for (const auto& [N, cells] : block) levels = std::max(levels, cells.rbegin()->first + 1);
    out << '\n' << (key.first.empty() ? "" : key.first + ", ") << "ell = " << key.second << '\n';

    std::vector<Column> cols;
    cols.push_back({report.table == 3 ? "" : "N", {}});
    for (int n = 0; n < levels; ++n) cols.push_back({"n=" + std::to_string(n), {}});
    auto add_row = [&](const std::string& head, auto cell) {
      cols[0].cells.push_back(head);
      for (int n = 0; n < levels; ++n) cols[n + 1].cells.push_back(cell(n));
    };
    for (const auto& [N, cells] : block) {
      auto pick = [&](int n) -> const ReportRow* {
        auto it = cells.find(n);
        return it == cells.end() ? nullptr : it->second;
      };
      auto mark = [](const ReportRow* r) {
        return r->pass && !*r->pass ? std::string("*") : std::string();
      };
      switch (report.table) {
        case 1:
          add_row(std::to_string(N), [&](int n) {
            const auto* r = pick(n);
            return r ? fmt("%.0e", *r->delta) + mark(r) : std::string("-");
          });
          break;
        case 2:
          add_row(std::to_string(N), [&](int n) {
            const auto* r = pick(n);
            return r ? fmt("%.6f", r->epsilon) + mark(r) : std::string("-");
          });
          break;
        default:
          add_row("momentum", [&](int n) {
            const auto* r = pick(n);
            return r ? fmt_gev(*r->mass_gev) + mark(r) : std::string("-");
          });
          add_row("coordinate", [&](int n) {
            const auto* r = pick(n);
            return r && r->coordinate ? fmt_gev(*r->mass_gev - r->epsilon * std::sqrt(kCornellBeta) +
                                                *r->coordinate * std::sqrt(kCornellBeta))
                                      : std::string("-");
          });
          break;
      }
    }
    if (report.table == 2 && key.second >= 0 && key.second < 4) {
      add_row("exact", [&](int n) { return fmt("%.6f", kTable2Exact[key.second][n]); });
    }
    out << render_columns(cols);
  }
  return out.str();
}

}  // namespace

Report run(const RunConfig& config) {
  Report report;
  report.command = config.command;
  report.table = config.table;
  switch (config.command) {
    case Command::solve: run_solve(config, report); break;
    case Command::scan: run_scan(config, report); break;
    case Command::compare: run_compare(config, report); break;
    case Command::reproduce:
      if (config.table == 1) reproduce_table1(config, report);
      else if (config.table == 2) reproduce_table2(config, report);
      else reproduce_table3(config, report);
      if (report.rows.empty() && report.diagnostics.empty()) {
        throw ConfigError("solver.ell/solver.N: selection matches no part of table " +
                          std::to_string(config.table));
      }
      break;
  }
  const auto failed = std::count_if(report.rows.begin(), report.rows.end(),
                                    [](const ReportRow& r) { return r.pass && !*r.pass; });
  if (failed > 0) {
    report.diagnostics.push_back(std::to_string(failed) + " of " +
                                 std::to_string(std::count_if(report.rows.begin(), report.rows.end(),
                                                              [](const ReportRow& r) { return r.pass.has_value(); })) +
                                 " checks failed");
    report.exit_status = 3;
  }
  return report;
}

std::string to_csv(const Report& report) {
  std::ostringstream out;
  out << "ell,n,N,sigma,epsilon,mass_gev,residual,imag\n";
  for (const auto& r : report.rows) {
    out << r.ell << ',' << r.n << ',' << r.N << ',' << fmt("%.17g", r.sigma) << ','
        << fmt("%.17g", r.epsilon) << ',' << csv_number(r.mass_gev) << ','
        << fmt("%.17g", r.residual) << ',' << fmt("%.17g", r.imag) << '\n';
  }
  return out.str();
}

std::string to_json(const Report& report) {
  json rows = json::array();
  for (const auto& r : report.rows) {
    json j{{"label", r.label},          {"ell", r.ell},
           {"n", r.n},                  {"N", r.N},
           {"sigma", r.sigma},          {"epsilon", r.epsilon},
           {"mass_gev", optional_number(r.mass_gev)},
           {"residual", r.residual},    {"imag", r.imag},
           {"coordinate", optional_number(r.coordinate)},
           {"reference", optional_number(r.reference)},
           {"delta", optional_number(r.delta)},
           {"pass", r.pass ? json(*r.pass) : json(nullptr)}};
    rows.push_back(std::move(j));
  }
  json j{{"command", to_string(report.command)},
         {"table", report.table},
         {"title", report.title},
         {"metric", report.metric},
         {"rows", std::move(rows)},
         {"diagnostics", report.diagnostics},
         {"exit_status", report.exit_status}};
  return j.dump(2) + "\n";
}

Report report_from_json(std::string_view text) {
  const json j = json::parse(text);
  Report report;
  report.command = parse_command(j.at("command").get<std::string>());
  report.table = j.at("table").get<int>();
  report.title = j.at("title").get<std::string>();
  report.metric = j.at("metric").get<std::string>();
  report.diagnostics = j.at("diagnostics").get<std::vector<std::string>>();
  report.exit_status = j.at("exit_status").get<int>();
  for (const auto& r : j.at("rows")) {
    ReportRow row;
    row.label = r.at("label").get<std::string>();
    row.ell = r.at("ell").get<int>();
    row.n = r.at("n").get<int>();
    row.N = r.at("N").get<int>();
    row.sigma = r.at("sigma").get<double>();
    row.epsilon = r.at("epsilon").get<double>();
    row.mass_gev = read_optional(r, "mass_gev");
    row.residual = r.at("residual").get<double>();
    row.imag = r.at("imag").get<double>();
    row.coordinate = read_optional(r, "coordinate");
    row.reference = read_optional(r, "reference");
    row.delta = read_optional(r, "delta");
    if (r.contains("pass") && !r.at("pass").is_null()) row.pass = r.at("pass").get<bool>();
    report.rows.push_back(std::move(row));
  }
  return report;
}

std::string to_pretty(const Report& report) {
  std::ostringstream out;
  out << report.title << '\n';
  if (report.command == Command::reproduce) {
    out << pretty_grid(report);
    if (!report.metric.empty()) out << "\n(* marks a failed check; delta = " << report.metric << ")\n";
  } else {
    out << pretty_rows(report);
  }
  for (const auto& d : report.diagnostics) out << "note: " << d << '\n';
  return out.str();
}

std::string format_report(const Report& report, OutputFormat format) {
  switch (format) {
    case OutputFormat::csv: return to_csv(report);
    case OutputFormat::json: return to_json(report);
    case OutputFormat::pretty: return to_pretty(report);
  }
  return {};
}

}  // namespace chebsie
