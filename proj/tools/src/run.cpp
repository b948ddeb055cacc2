#include "mgrit/cli/run.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>

#include "mgrit/apps/dahlquist.hpp"
#include "mgrit/apps/heat1d.hpp"
#include "mgrit/apps/heat2d.hpp"
#include "mgrit/decomposition.hpp"
#include "mgrit/errors.hpp"
#include "mgrit/thread_transport.hpp"
#ifdef MGRIT_HAS_MPI
#include "mgrit/mpi_transport.hpp"
#endif

namespace mgrit::cli {

namespace {

std::string real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::size_t> factors_for(const RunConfig& c) {
  if (c.levels <= 1) return {};
  if (c.coarsening.size() == 1) return std::vector<std::size_t>(c.levels - 1, c.coarsening[0]);
  return c.coarsening;
}

Problem build_spatially_coarsened(const RunConfig& c, const TimeGrid& fine_grid) {
  const auto factors = factors_for(c);
  uniform_level_sizes(fine_grid.count(), factors);  // reports exhaustion with the level

  std::vector<std::shared_ptr<const Application>> apps;
  TimeGrid grid = fine_grid;
  apps.push_back(std::make_shared<apps::Heat1D>(grid, c.nx_levels[0], c.a));
  for (std::size_t l = 0; l < factors.size(); ++l) {
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < grid.count(); i += factors[l]) keep.push_back(i);
    grid = grid.select(keep);
    apps.push_back(std::make_shared<apps::Heat1D>(grid, c.nx_levels[l + 1], c.a));
  }
  Problem p;
  p.hierarchy = std::make_shared<Hierarchy>(build_hierarchy_from_grids(apps));
  for (std::size_t l = 0; l + 1 < c.levels; ++l) {
    p.transfers.push_back(std::make_shared<apps::Heat1DTransfer>(c.nx_levels[l], c.nx_levels[l + 1]));
  }
  return p;
}

struct WorkerResult {
  SolveInfo info;
  std::string error;
  bool diverged = false;
  std::vector<State> solution;
  std::vector<TraceEvent> trace;
};

// One time worker of one space group.
WorkerResult solve_on(const Problem& problem, const MgritSettings& settings, Transport& time) {
  WorkerResult r;
  Solver solver(problem.hierarchy, settings, time);
  try {
    r.info = solver.solve();
  } catch (const DivergenceError& e) {
    r.diverged = true;
    r.error = e.what();
    r.info.iterations = e.iteration();
  }
  if (!r.diverged) r.solution = solver.gather_solution();
  r.trace = solver.trace();
  return r;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write '" + path.string() + "'");
  out << text;
}

}  // namespace

Problem build_problem(const RunConfig& c) {
  validate(c);
  const auto grid = TimeGrid::uniform(c.t_start, c.t_stop, c.nt);
  if (c.spatial_coarsening) return build_spatially_coarsened(c, grid);

  std::shared_ptr<const Application> fine;
  if (c.problem == "dahlquist") {
    fine = std::make_shared<apps::Dahlquist>(grid, c.lambda);
  } else if (c.problem == "heat1d") {
    fine = std::make_shared<apps::Heat1D>(grid, c.nx, c.a);
  } else {
    fine = std::make_shared<apps::Heat2D>(grid, c.nx, c.ny, c.a);
  }
  Problem p;
  try {
    p.hierarchy = std::make_shared<Hierarchy>(build_uniform_hierarchy(fine, c.levels, c.coarsening));
  } catch (const StructureError& e) {
    throw ConfigError(std::string("keys 'nt', 'levels', 'coarsening': ") + e.what());
  }
  return p;
}

MgritSettings make_settings(const RunConfig& c, const Problem& problem) {
  MgritSettings s;
  s.cycle_type = c.cycle_type == "F" ? CycleType::F : CycleType::V;
  s.cf_iter = c.cf_iter;
  s.tol = c.tol;
  s.max_iter = c.max_iter;
  s.nested_iteration = c.nested_iteration;
  s.random_seed = c.seed;
  s.skip_first_f_relax_after_two_iters = c.skip_first_f_relax;
  s.transfers = problem.transfers;
  s.trace = c.trace;
  s.validate(problem.hierarchy->num_levels());
  return s;
}

RunOutcome run(const RunConfig& config) {
  const Problem problem = build_problem(config);
  const MgritSettings settings = make_settings(config, problem);
  const int time_workers = config.workers_time;
  const int space_workers = config.workers_space;
  const int world = time_workers * space_workers;

  WorkerResult result;
  std::size_t messages = 0;
  std::mutex lock;

  if (config.transport == "threads") {
    std::vector<std::unique_ptr<ThreadNetwork>> time_nets;
    for (int s = 0; s < space_workers; ++s) time_nets.push_back(std::make_unique<ThreadNetwork>(time_workers));
    run_workers(world, [&](Transport& world_transport) {
      const auto split = split_communicator(world, world_transport.rank(), space_workers);
      Transport& time = time_nets[static_cast<std::size_t>(split.space_rank)]->endpoint(split.time_rank);
      try {
        auto r = solve_on(problem, settings, time);
        std::lock_guard guard(lock);
        if (split.space_rank == 0) messages += time.stats().messages_sent;
        if (split.world_rank == 0) result = std::move(r);
      } catch (...) {
        for (auto& net : time_nets) net->abort();
        throw;
      }
    });
  } else {
#ifdef MGRIT_HAS_MPI
    int initialized = 0;
    MPI_Initialized(&initialized);
    if (!initialized) MPI_Init(nullptr, nullptr);
    int world_size = 1, world_rank = 0;
    MPI_Comm_size(MPI_COMM_WORLD, &world_size);
    MPI_Comm_rank(MPI_COMM_WORLD, &world_rank);
    if (world_size != world) {
      throw ConfigError("transport mpi: launched with " + std::to_string(world_size) +
                        " processes but workers_time * workers_space = " + std::to_string(world));
    }
    const auto split = split_communicator(world, world_rank, space_workers);
    MPI_Comm time_comm;
    MPI_Comm_split(MPI_COMM_WORLD, split.space_rank, split.time_rank, &time_comm);
    {
      MpiTransport time(time_comm);
      result = solve_on(problem, settings, time);
      double local = static_cast<double>(split.space_rank == 0 ? time.stats().messages_sent : 0);
      double total = 0.0;
      MPI_Reduce(&local, &total, 1, MPI_DOUBLE, MPI_SUM, 0, MPI_COMM_WORLD);
      messages = static_cast<std::size_t>(total);
    }
    MPI_Comm_free(&time_comm);
    if (world_rank != 0) {
      RunOutcome quiet;
      quiet.exit_code = result.info.converged ? 0 : 1;
      return quiet;
    }
#else
    throw ConfigError("key 'transport': this build has no MPI support (configure with MGRIT_ENABLE_MPI=ON)");
#endif
  }

  RunOutcome outcome;
  outcome.info = std::move(result.info);
  outcome.error = std::move(result.error);
  outcome.solution = std::move(result.solution);
  outcome.trace = std::move(result.trace);
  outcome.level_sizes = problem.hierarchy->level_sizes();
  outcome.messages_sent = messages;
  outcome.exit_code = outcome.info.converged && outcome.error.empty() ? 0 : 1;

  const std::filesystem::path dir(config.output_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigError("key 'output_dir': cannot create '" + dir.string() + "': " + ec.message());

  std::ostringstream csv, summary;
  write_convergence_csv(csv, outcome.info);
  write_file(dir / "convergence.csv", csv.str());
  write_summary(summary, config, outcome);
  write_file(dir / "summary.txt", summary.str());
  if (!outcome.solution.empty()) {
    std::ostringstream sol;
    write_solution(sol, *problem.hierarchy->level(0).app, outcome.solution);
    write_file(dir / "solution.txt", sol.str());
  }
  if (config.trace) {
    std::string text;
    for (const auto& e : outcome.trace) text += format_trace_event(e) + "\n";
    write_file(dir / "trace.txt", text);
  }
  return outcome;
}

void write_convergence_csv(std::ostream& out, const SolveInfo& info) {
  out << "iteration,residual,cumulative_seconds\n";
  out << "0," << real(info.setup_residual) << ',' << real(info.setup_seconds) << '\n';
  for (std::size_t k = 0; k < info.residual_history.size(); ++k) {
    out << k + 1 << ',' << real(info.residual_history[k]) << ',' << real(info.cumulative_seconds[k])
        << '\n';
  }
}

void write_solution(std::ostream& out, const Application& app, const std::vector<State>& solution) {
  const auto& grid = app.time_grid();
  for (std::size_t i = 0; i < solution.size(); ++i) {
    out << i << ' ' << real(grid[i]);
    for (double v : solution[i].pack()) out << ' ' << real(v);
    out << '\n';
  }
}

void write_summary(std::ostream& out, const RunConfig& config, const RunOutcome& outcome) {
  const auto& info = outcome.info;
  out << "converged = " << (info.converged ? "true" : "false") << '\n';
  out << "iterations = " << info.iterations << '\n';
  out << "setup_residual = " << real(info.setup_residual) << '\n';
  const double final_residual =
      info.residual_history.empty() ? info.setup_residual : info.residual_history.back();
  out << "final_residual = " << real(final_residual) << '\n';
  out << "setup_seconds = " << real(info.setup_seconds) << '\n';
  out << "solve_seconds = " << real(info.solve_seconds) << '\n';
  out << "level_sizes =";
  for (auto n : outcome.level_sizes) out << ' ' << n;
  out << '\n';
  out << "messages_sent = " << outcome.messages_sent << '\n';
  if (!outcome.error.empty()) out << "error = " << outcome.error << '\n';
  out << "\n[config]\n" << format_config(config);
}

std::vector<State> load_solution(std::istream& in, const Application& app) {
  const std::size_t width = app.vector_template().packed_size();
  std::vector<State> states;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::size_t index = 0;
    double time = 0.0;
    std::vector<double> values;
    fields >> index >> time;
    for (double v; fields >> v;) values.push_back(v);
    if (!fields.eof() || index != states.size() || values.size() != width) {
      throw StructureError("solution line " + std::to_string(line_no) + " does not match the problem");
    }
    states.push_back(app.vector_template().unpacked_like(values));
  }
  if (states.size() != app.time_grid().count()) {
    throw StructureError("solution has " + std::to_string(states.size()) + " time points, expected " +
                         std::to_string(app.time_grid().count()));
  }
  return states;
}

double solution_residual(const RunConfig& config, const std::vector<State>& solution) {
  RunConfig single = config;
  single.levels = 1;
  single.spatial_coarsening = false;
  const Problem problem = build_problem(single);
  MgritSettings settings;
  Solver solver(problem.hierarchy, settings);
  auto& u = solver.state(0).u;
  if (u.size() != solution.size()) throw StructureError("solution length does not match nt");
  u = solution;
  return solver.space_time_residual();
}

void write_plot_data(std::istream& csv, std::ostream& out) {
  std::string line;
  if (!std::getline(csv, line) || line.rfind("iteration,residual", 0) != 0) {
    throw ConfigError("not a convergence.csv file (missing header)");
  }
  out << "# iteration residual\n";
  std::size_t line_no = 1;
  while (std::getline(csv, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto first = line.find(',');
    const auto second = first == std::string::npos ? first : line.find(',', first + 1);
    if (second == std::string::npos) {
      throw ConfigError("convergence.csv line " + std::to_string(line_no) + ": expected 3 columns");
    }
    out << line.substr(0, first) << ' ' << line.substr(first + 1, second - first - 1) << '\n';
  }
}

}  // namespace mgrit::cli
