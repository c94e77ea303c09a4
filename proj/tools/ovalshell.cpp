// ovalshell: longitudinal strain of bent cylindrical shells with imposed or
// prevented cross-section ovalisation.
//
//   ovalshell analyze --scenario <path> [--out <path>]
//   ovalshell profile --scenario <path> --x-start <mm> --x-end <mm> --x-step <mm> --out <csv>
//   ovalshell verify  --scenario <path>
//   ovalshell sweep   --scenario <path> --param <key> --from <v> --to <v> --steps <n> --out <csv>
//
// OVALSHELL_NMAX overrides numerics.n_max. Exit status: 0 success,
// 2 invalid input, 3 numerical non-convergence.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "ovalshell/commands.hpp"

namespace {

ovalshell::Scenario load(const std::string& path) {
  auto sc = ovalshell::load_scenario_file(path);
  if (const char* env = std::getenv("OVALSHELL_NMAX")) {
    try {
      std::size_t used = 0;
      const int n_max = std::stoi(env, &used);
      ovalshell::require(used == std::string(env).size(), ovalshell::ErrorCode::ValidationError,
                         "OVALSHELL_NMAX is not an integer");
      sc.numerics.n_max = n_max;
    } catch (const std::logic_error&) {
      throw ovalshell::Error(ovalshell::ErrorCode::ValidationError,
                             std::string("OVALSHELL_NMAX is not an integer: ") + env);
    }
    ovalshell::validate(sc);
  }
  return sc;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open output file " + path);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Longitudinal strain of bent cylindrical shells with imposed or prevented ovalisation"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string out_path;

  auto* analyze = app.add_subcommand("analyze", "Report section, regime, restraint force and strains");
  analyze->add_option("--scenario", scenario_path, "Scenario file")->required();
  analyze->add_option("--out", out_path, "Report file (default: stdout)");

  double x_start = 0.0, x_end = 0.0, x_step = 0.0;
  auto* profile = app.add_subcommand("profile", "Write an axial strain/stress profile as CSV");
  profile->add_option("--scenario", scenario_path, "Scenario file")->required();
  profile->add_option("--x-start", x_start, "First axial position [mm]")->required();
  profile->add_option("--x-end", x_end, "Last axial position [mm]")->required();
  profile->add_option("--x-step", x_step, "Axial spacing [mm]")->required();
  profile->add_option("--out", out_path, "CSV file")->required();

  auto* verify = app.add_subcommand("verify", "Compare closed forms with the numerical oracle");
  verify->add_option("--scenario", scenario_path, "Scenario file")->required();

  std::string param;
  double from = 0.0, to = 0.0;
  int steps = 1;
  auto* sweep = app.add_subcommand("sweep", "Vary one scalar and write one CSV row per value");
  sweep->add_option("--scenario", scenario_path, "Scenario file")->required();
  sweep->add_option("--param", param, "Scenario key to vary")->required();
  sweep->add_option("--from", from, "First value")->required();
  sweep->add_option("--to", to, "Last value")->required();
  sweep->add_option("--steps", steps, "Number of values")->required();
  sweep->add_option("--out", out_path, "CSV file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : ovalshell::kExitValidation;
  }

  try {
    const auto sc = load(scenario_path);
    if (*analyze) {
      if (out_path.empty()) return ovalshell::run_analyze(sc, std::cout, std::cerr);
      auto out = open_output(out_path);
      return ovalshell::run_analyze(sc, out, std::cerr);
    }
    if (*profile) {
      auto out = open_output(out_path);
      return ovalshell::run_profile(sc, x_start, x_end, x_step, out, std::cerr);
    }
    if (*verify) {
      return ovalshell::run_verify(sc, std::cout);
    }
    if (*sweep) {
      auto out = open_output(out_path);
      return ovalshell::run_sweep(sc, param, from, to, steps, out, std::cerr);
    }
  } catch (const ovalshell::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return ovalshell::exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return ovalshell::kExitFailure;
  }
  return ovalshell::kExitFailure;
}
