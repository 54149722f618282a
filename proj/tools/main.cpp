#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "crq/report.hpp"
#include "crq/runner.hpp"
#include "crq/script.hpp"

namespace {

std::string read_input(const std::string& path) {
  if (path.empty() || path == "-") {
    std::ostringstream buffer;
    buffer << std::cin.rdbuf();
    return buffer.str();
  }
  std::ifstream file(path);
  if (!file) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return buffer.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Coherence and p-entailment engine for conditional events: decides coherence of "
      "conditional probability assessments, coherent extension intervals, p-consistency and "
      "p-entailment, trivalent validity, and previsions of compound and iterated conditionals, "
      "all in exact rational arithmetic."};

  std::string script_path;
  bool json = false;
  std::size_t max_atoms = 20;
  bool no_cross_oracle = false;
  app.add_option("script", script_path, "script file ('-' or empty reads stdin)");
  app.add_flag("--json", json, "emit the JSON report instead of text lines");
  app.add_option("--max-atoms", max_atoms, "cap on declared atoms (default 20)")
      ->check(CLI::Range(std::size_t{1}, std::size_t{20}));
  app.add_flag("--no-cross-oracle", no_cross_oracle,
               "skip the coherence cross-check of p-entailment verdicts");
  CLI11_PARSE(app, argc, argv);

  crq::Script script;
  try {
    script = crq::parse_script(read_input(script_path));
  } catch (const crq::ParseError& error) {
    std::cerr << "parse error: " << error.what() << "\n";
    if (!error.expected.empty()) {
      std::cerr << "expected:";
      for (const auto& e : error.expected) std::cerr << " " << e;
      std::cerr << "\n";
    }
    return 2;
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 2;
  }

  crq::RunOptions options;
  options.cross_oracle = !no_cross_oracle;
  options.max_atoms = max_atoms;

  crq::Report report;
  try {
    report = crq::run_script(script, options);
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 1;
  }

  std::cout << crq::render_report(report,
                                  json ? crq::ReportFormat::Json : crq::ReportFormat::Text);
  return report.all_ok() ? 0 : 1;
}
