// Command-line front end: reads a config file, applies flag overrides, runs
// the command and writes the report.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "chebsie/config.hpp"
#include "chebsie/errors.hpp"
#include "chebsie/runner.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw chebsie::ConfigError("cannot open config file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Chebyshev momentum-space solver for Coulomb plus linear bound states"};
  app.set_version_flag("--version", "chebsie 0.1.0");

  std::string config_path, command, table, ell, levels, orders, sigma, format, out;
  std::vector<std::string> settings;
  app.add_option("--config", config_path, "Config file (key = value, [run]/[potential]/[solver])");
  app.add_option("--command", command, "solve | scan | compare | reproduce");
  app.add_option("--table", table, "Table for reproduce: 1, 2 or 3");
  app.add_option("--ell", ell, "Partial waves, e.g. 0,1,2");
  app.add_option("--levels", levels, "Number of levels per partial wave");
  app.add_option("--N", orders, "Mesh size, or a comma list for scan");
  app.add_option("--sigma", sigma, "Mapping scale");
  app.add_option("--format", format, "csv | json | pretty");
  app.add_option("--out", out, "Output path (default stdout)");
  app.add_option("--set", settings, "Any config entry as key=value (repeatable)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    chebsie::ConfigDocument doc;
    if (!config_path.empty()) doc = chebsie::parse_document(read_file(config_path));
    for (const auto& s : settings) {
      const auto eq = s.find('=');
      if (eq == std::string::npos) throw chebsie::ConfigError("--set expects key=value, got " + s);
      chebsie::set_entry(doc, s.substr(0, eq), s.substr(eq + 1));
    }
    const std::pair<const char*, const std::string*> flags[] = {
        {"command", &command}, {"table", &table}, {"ell", &ell},       {"levels", &levels},
        {"N", &orders},        {"sigma", &sigma}, {"format", &format}, {"out", &out}};
    for (const auto& [key, value] : flags) {
      if (!value->empty()) chebsie::set_entry(doc, key, *value);
    }

    const auto config = chebsie::build_config(doc);
    const auto report = chebsie::run(config);
    const std::string text = chebsie::format_report(report, config.format);
    if (config.out.empty()) {
      std::cout << text;
    } else {
      std::ofstream file(config.out);
      if (!file) throw chebsie::ConfigError("cannot write " + config.out);
      file << text;
    }
    if (config.format != chebsie::OutputFormat::pretty) {
      for (const auto& d : report.diagnostics) std::cerr << "note: " << d << '\n';
    }
    return report.exit_status;
  } catch (const chebsie::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
