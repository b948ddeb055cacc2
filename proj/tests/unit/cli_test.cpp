#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "mgrit/cli/config.hpp"
#include "mgrit/cli/run.hpp"
#include "mgrit/errors.hpp"

namespace mgrit::cli {
namespace {

namespace fs = std::filesystem;

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("mgrit_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string read(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

int run_cli(const std::string& args) {
  const std::string cmd = std::string(MGRIT_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

const char* listing_two = R"(# dahlquist, two levels
problem = dahlquist
t_start = 0
t_stop = 5
nt = 101      # points, both ends included
levels = 2
coarsening = 2
tol = 1e-10
)";

TEST(Config, ParsesKeysAndComments) {
  const auto c = parse_config(listing_two);
  EXPECT_EQ(c.problem, "dahlquist");
  EXPECT_EQ(c.nt, 101u);
  EXPECT_EQ(c.tol, 1e-10);
  EXPECT_EQ(c.coarsening, std::vector<std::size_t>{2});
  EXPECT_EQ(c.cycle_type, "V");
}

TEST(Config, FormatRoundTrips) {
  RunConfig c;
  c.problem = "heat1d";
  c.lambda = -0.1;
  c.t_stop = 2.0 / 3.0;
  c.coarsening = {32, 16};
  c.nx_levels = {129, 65};
  c.spatial_coarsening = true;
  c.trace = true;
  c.output_dir = "/tmp/some dir";
  EXPECT_EQ(parse_config(format_config(c)), c);
  EXPECT_EQ(parse_config(format_config(RunConfig{})), RunConfig{});
}

TEST(Config, UnknownKeyNamesLine) {
  try {
    parse_config("problem = heat1d\n\nspeed = 3\n", "exp.cfg");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("exp.cfg:3"), std::string::npos) << what;
    EXPECT_NE(what.find("speed"), std::string::npos) << what;
  }
}

TEST(Config, BadValueNamesField) {
  try {
    parse_config("tol = -1\n");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("'tol'"), std::string::npos) << e.what();
  }
  EXPECT_THROW(parse_config("cycle_type = W\n"), ConfigError);
  EXPECT_THROW(parse_config("nt = 10.5\n"), ConfigError);
  EXPECT_THROW(parse_config("levels\n"), ConfigError);
  EXPECT_THROW(parse_config("coarsening = 4,,2\n"), ConfigError);
}

TEST(Config, Overrides) {
  RunConfig c = parse_config(listing_two);
  apply_override(c, "cycle_type=F");
  apply_override(c, "coarsening = 4,2");
  EXPECT_EQ(c.cycle_type, "F");
  EXPECT_EQ(c.coarsening, (std::vector<std::size_t>{4, 2}));
  EXPECT_THROW(apply_override(c, "cycle_type"), ConfigError);
}

TEST(Config, CrossFieldValidation) {
  RunConfig c;
  c.levels = 4;
  c.coarsening = {2, 2};
  EXPECT_THROW(validate(c), ConfigError);
  c = RunConfig{};
  c.spatial_coarsening = true;
  EXPECT_THROW(validate(c), ConfigError);  // dahlquist
  c.problem = "heat1d";
  c.nx = 33;
  c.nx_levels = {33, 16};
  EXPECT_THROW(validate(c), ConfigError);
  c.nx_levels = {33, 17};
  EXPECT_NO_THROW(validate(c));
}

TEST(Run, ListingTwoOutputs) {
  const auto dir = scratch("listing2");
  RunConfig c = parse_config(listing_two);
  c.output_dir = dir.string();
  const auto outcome = run(c);
  EXPECT_EQ(outcome.exit_code, 0);
  EXPECT_TRUE(outcome.info.converged);

  const auto csv = read(dir / "convergence.csv");
  EXPECT_EQ(csv.rfind("iteration,residual,cumulative_seconds\n0,", 0), 0u) << csv;
  std::size_t rows = 0;
  for (char ch : csv) rows += ch == '\n';
  EXPECT_EQ(rows, 2u + static_cast<std::size_t>(outcome.info.iterations));

  // summary.txt re-parses to the same config.
  EXPECT_EQ(load_config_file((dir / "summary.txt").string()), c);
  EXPECT_NE(read(dir / "summary.txt").find("converged = true"), std::string::npos);

  // solution.txt feeds back into the residual.
  const auto problem = build_problem(c);
  std::ifstream sol(dir / "solution.txt");
  const auto loaded = load_solution(sol, *problem.hierarchy->level(0).app);
  EXPECT_LE(solution_residual(c, loaded), c.tol);
}

TEST(Run, HeatSolutionReloads) {
  const auto dir = scratch("heat");
  RunConfig c;
  c.problem = "heat1d";
  c.nx = 17;
  c.t_stop = 2.0;
  c.nt = 65;
  c.levels = 3;
  c.coarsening = {4};
  c.workers_time = 3;
  c.output_dir = dir.string();
  const auto outcome = run(c);
  ASSERT_EQ(outcome.exit_code, 0);
  EXPECT_GT(outcome.messages_sent, 0u);
  std::ifstream sol(dir / "solution.txt");
  const auto loaded = load_solution(sol, *build_problem(c).hierarchy->level(0).app);
  EXPECT_LE(solution_residual(c, loaded), c.tol);
}

TEST(Run, SingleLevelReportsZeroIterations) {
  const auto dir = scratch("single");
  RunConfig c = parse_config(listing_two);
  c.levels = 1;
  c.output_dir = dir.string();
  const auto outcome = run(c);
  EXPECT_EQ(outcome.exit_code, 0);
  EXPECT_NE(read(dir / "summary.txt").find("iterations = 0\n"), std::string::npos);
}

TEST(Run, SpaceReplicasAgree) {
  const auto dir = scratch("space");
  RunConfig c = parse_config(listing_two);
  c.workers_time = 2;
  c.workers_space = 2;
  c.output_dir = dir.string();
  const auto outcome = run(c);
  EXPECT_EQ(outcome.exit_code, 0);
  c.workers_space = 1;
  c.workers_time = 1;
  EXPECT_EQ(run(c).info.residual_history, outcome.info.residual_history);
}

TEST(Run, TraceFile) {
  const auto dir = scratch("trace");
  RunConfig c = parse_config(listing_two);
  c.trace = true;
  c.max_iter = 1;
  c.nested_iteration = false;
  c.output_dir = dir.string();
  run(c);
  const auto trace = read(dir / "trace.txt");
  EXPECT_EQ(trace.rfind("0,residual,0,100\n0,f_relax,0,100\n0,c_relax,0,100\n", 0), 0u) << trace;
}

TEST(Run, HierarchyExhaustionIsConfigError) {
  RunConfig c = parse_config(listing_two);
  c.nt = 1025;
  c.levels = 5;
  c.coarsening = {32, 16, 4, 4};
  EXPECT_THROW(build_problem(c), ConfigError);
}

TEST(PlotData, CopiesColumns) {
  std::istringstream csv("iteration,residual,cumulative_seconds\n0,0.5,1e-3\n1,2.5e-08,0.25\n");
  std::ostringstream out;
  write_plot_data(csv, out);
  EXPECT_EQ(out.str(), "# iteration residual\n0 0.5\n1 2.5e-08\n");
}

TEST(PlotData, HeaderOnly) {
  std::istringstream csv("iteration,residual,cumulative_seconds\n");
  std::ostringstream out;
  write_plot_data(csv, out);
  EXPECT_EQ(out.str(), "# iteration residual\n");
}

TEST(Cli, ExitCodes) {
  const auto dir = scratch("exit");
  write(dir / "ok.cfg", std::string(listing_two) + "output_dir = " + (dir / "ok").string() + "\n");
  EXPECT_EQ(run_cli("run " + (dir / "ok.cfg").string()), 0);
  EXPECT_EQ(run_cli("run " + (dir / "ok.cfg").string() + " --override max_iter=1"), 1);
  EXPECT_EQ(run_cli("run " + (dir / "ok.cfg").string() + " --override bogus=1"), 2);
  write(dir / "bad.cfg", "problem = heat3d\n");
  EXPECT_EQ(run_cli("run " + (dir / "bad.cfg").string()), 2);
  EXPECT_EQ(run_cli("run " + (dir / "missing.cfg").string()), 2);
  EXPECT_EQ(run_cli("run " + (dir / "ok.cfg").string() + " --trace"), 0);
  EXPECT_TRUE(fs::exists(dir / "ok" / "trace.txt"));
  EXPECT_EQ(run_cli("plotdata " + (dir / "ok" / "convergence.csv").string() + " -o " +
                    (dir / "plot.dat").string()),
            0);
  EXPECT_EQ(read(dir / "plot.dat").rfind("# iteration residual\n0 ", 0), 0u);
  EXPECT_EQ(run_cli("residual " + (dir / "ok.cfg").string() + " " +
                    (dir / "ok" / "solution.txt").string()),
            0);
}

TEST(Cli, TransportFromEnvironment) {
  const auto dir = scratch("env");
  write(dir / "ok.cfg", std::string(listing_two) + "output_dir = " + (dir / "ok").string() + "\n");
  EXPECT_EQ(run_cli("run " + (dir / "ok.cfg").string()), 0);
  const std::string bad = "MGRIT_TRANSPORT=carrier-pigeon ";
  const int status = std::system((bad + MGRIT_CLI_PATH + " run " + (dir / "ok.cfg").string() +
                                  " >/dev/null 2>&1").c_str());
  EXPECT_EQ(WEXITSTATUS(status), 2);
}

}  // namespace
}  // namespace mgrit::cli
