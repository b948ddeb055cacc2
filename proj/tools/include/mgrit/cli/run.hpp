#pragma once

#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "mgrit/cli/config.hpp"
#include "mgrit/hierarchy.hpp"
#include "mgrit/solver.hpp"
#include "mgrit/transport.hpp"

namespace mgrit::cli {

struct Problem {
  std::shared_ptr<const Hierarchy> hierarchy;
  /// Empty unless spatial coarsening is on.
  std::vector<std::shared_ptr<const SpatialTransfer>> transfers;
};

/// Fine application, hierarchy and spatial transfers described by `config`.
Problem build_problem(const RunConfig& config);
MgritSettings make_settings(const RunConfig& config, const Problem& problem);

struct RunOutcome {
  /// 0 converged, 1 not converged or diverged.
  int exit_code = 1;
  SolveInfo info;
  /// Empty unless the solve failed.
  std::string error;
  std::vector<std::size_t> level_sizes;
  /// Finest-level solution gathered on the first worker.
  std::vector<State> solution;
  std::vector<TraceEvent> trace;
  /// Messages sent by all time workers together.
  std::size_t messages_sent = 0;
};

/// Validates the config, solves on the configured workers and writes
/// convergence.csv, solution.txt, summary.txt (and trace.txt) into
/// config.output_dir. Config problems raise ConfigError.
RunOutcome run(const RunConfig& config);

void write_convergence_csv(std::ostream& out, const SolveInfo& info);
void write_solution(std::ostream& out, const Application& app, const std::vector<State>& solution);
void write_summary(std::ostream& out, const RunConfig& config, const RunOutcome& outcome);

/// Reads solution.txt back into states shaped like `app.vector_template()`.
std::vector<State> load_solution(std::istream& in, const Application& app);

/// Space-time residual of a finest-level solution for the problem in `config`.
double solution_residual(const RunConfig& config, const std::vector<State>& solution);

/// Two whitespace-separated columns (iteration, residual) copied verbatim
/// from convergence.csv, preceded by a `#` header line.
void write_plot_data(std::istream& csv, std::ostream& out);

}  // namespace mgrit::cli
