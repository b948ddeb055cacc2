#include <cstdlib>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "mgrit/cli/config.hpp"
#include "mgrit/cli/run.hpp"
#include "mgrit/errors.hpp"

namespace {

using namespace mgrit;
using namespace mgrit::cli;

RunConfig load(const std::string& path, const std::vector<std::string>& overrides, bool trace) {
  RunConfig config = load_config_file(path);
  for (const auto& o : overrides) {
    try {
      apply_override(config, o);
    } catch (const ConfigError& e) {
      throw ConfigError(std::string("--override: ") + e.what());
    }
  }
  if (trace) config.trace = true;
  if (const char* env = std::getenv("MGRIT_TRANSPORT"); env && *env) {
    try {
      set_value(config, "transport", env);
    } catch (const ConfigError& e) {
      throw ConfigError(std::string("MGRIT_TRANSPORT: ") + e.what());
    }
  }
  return config;
}

int run_command(const RunConfig& config) {
  const RunOutcome outcome = run(config);
  const auto& info = outcome.info;
  if (!outcome.error.empty()) {
    std::cerr << "mgrit: " << outcome.error << '\n';
  } else if (!info.converged) {
    std::cerr << "mgrit: not converged after " << info.iterations << " iterations\n";
  }
  std::cout << (info.converged ? "converged" : "not converged") << " after " << info.iterations
            << " iterations, residual "
            << (info.residual_history.empty() ? info.setup_residual : info.residual_history.back())
            << '\n';
  return outcome.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MGRIT parallel-in-time solver"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;
  bool trace = false;
  auto* run_cmd = app.add_subcommand("run", "Solve the problem described by a config file");
  run_cmd->add_option("config", config_path, "key = value config file (summary.txt works too)")
      ->required();
  run_cmd->add_option("--override", overrides, "key=value, applied after the file")
      ->allow_extra_args(false);
  run_cmd->add_flag("--trace", trace, "Write trace.txt with one line per solver operation");

  std::string csv_path, plot_out;
  auto* plot_cmd = app.add_subcommand("plotdata", "Convert convergence.csv to gnuplot columns");
  plot_cmd->add_option("csv", csv_path, "convergence.csv")->required();
  plot_cmd->add_option("-o,--output", plot_out, "Output file (default: stdout)");

  std::string solution_path;
  auto* res_cmd = app.add_subcommand("residual", "Space-time residual of a solution.txt");
  res_cmd->add_option("config", config_path, "Config of the run that produced the solution")
      ->required();
  res_cmd->add_option("solution", solution_path, "solution.txt")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*run_cmd) return run_command(load(config_path, overrides, trace));
    if (*plot_cmd) {
      std::ifstream csv(csv_path);
      if (!csv) throw ConfigError("cannot open '" + csv_path + "'");
      if (plot_out.empty()) {
        write_plot_data(csv, std::cout);
      } else {
        std::ofstream out(plot_out);
        if (!out) throw ConfigError("cannot write '" + plot_out + "'");
        write_plot_data(csv, out);
      }
      return 0;
    }
    if (*res_cmd) {
      const RunConfig config = load(config_path, {}, false);
      const Problem problem = build_problem(config);
      std::ifstream in(solution_path);
      if (!in) throw ConfigError("cannot open '" + solution_path + "'");
      const auto solution = load_solution(in, *problem.hierarchy->level(0).app);
      std::cout.precision(17);
      std::cout << solution_residual(config, solution) << '\n';
      return 0;
    }
  } catch (const ConfigError& e) {
    std::cerr << "mgrit: config error: " << e.what() << '\n';
    return 2;
  } catch (const StructureError& e) {
    std::cerr << "mgrit: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "mgrit: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
