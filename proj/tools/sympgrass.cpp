// sympgrass <suite> [--n INT] [--seed INT] [--trials INT] [--grid INT]
//           [--tol KEY=VAL ...] [--out PATH] [--csv PATH]
//
// Exit status: 0 all checks passed, 1 a check failed, 2 usage error,
// 3 I/O error, 4 any other error.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sympgrass/experiments.hpp"

namespace {

int exit_code(sympgrass::ErrorCode code) {
  switch (code) {
    case sympgrass::ErrorCode::UsageError:
    case sympgrass::ErrorCode::InvalidInput: return 2;
    case sympgrass::ErrorCode::IOError: return 3;
    default: return 4;
  }
}

std::string default_output(const std::string& suite) {
  const char* dir = std::getenv("SYMPGRASS_OUT_DIR");
  std::string base = dir && *dir ? dir : ".";
  if (base.back() != '/') base += '/';
  return base + suite + ".json";
}

}  // namespace

int main(int argc, char** argv) {
  using namespace sympgrass;

  CLI::App app{"Lagrangian Grassmannian orbit experiments"};
  std::string suite;
  std::optional<int> n, trials, grid;
  std::uint64_t seed = 0;
  std::vector<std::string> tol;
  std::string out, csv;

  std::string names;
  for (const auto& s : suite_names()) names += (names.empty() ? "" : ", ") + s;
  app.add_option("suite", suite, "One of: " + names)->required();
  app.add_option("--n", n, "Largest half-dimension");
  app.add_option("--seed", seed, "Seed for the random generator");
  app.add_option("--trials", trials, "Number of random trials");
  app.add_option("--grid", grid, "Grid points for sampled curves");
  app.add_option("--tol", tol, "Tolerance override KEY=VAL (repeatable)");
  app.add_option("--out", out, "JSON report path (default $SYMPGRASS_OUT_DIR/<suite>.json)");
  app.add_option("--csv", csv, "Per-trial CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    ExperimentConfig cfg = default_config(suite);
    if (n) cfg.n = *n;
    if (trials) cfg.trials = *trials;
    if (grid) cfg.grid_points = *grid;
    cfg.seed = seed;
    for (const auto& kv : tol) {
      const auto eq = kv.find('=');
      require(eq != std::string::npos && eq > 0, ErrorCode::UsageError, "--tol expects KEY=VAL, got '" + kv + "'");
      std::size_t used = 0;
      double value = 0.0;
      try {
        value = std::stod(kv.substr(eq + 1), &used);
      } catch (const std::exception&) {
        used = 0;
      }
      require(used > 0 && used == kv.size() - eq - 1, ErrorCode::UsageError, "--tol value is not a number: '" + kv + "'");
      cfg.tolerances[kv.substr(0, eq)] = value;
    }
    cfg.output_path = out.empty() ? default_output(suite) : out;

    const auto report = run_suite(suite, cfg);
    write_report(report, cfg.output_path);
    if (!csv.empty()) emit_csv(report, csv);

    std::cout << report.name << ": " << (report.pass ? "PASS" : "FAIL") << "\n";
    for (const auto& [key, value] : report.metrics) std::cout << "  " << key << " = " << format_double(value) << "\n";
    std::cout << "  report: " << cfg.output_path << "\n";
    return report.pass ? 0 : 1;
  } catch (const Error& e) {
    std::cerr << "sympgrass: " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "sympgrass: " << e.what() << "\n";
    return 4;
  }
}
