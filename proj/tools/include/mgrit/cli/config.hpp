#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace mgrit::cli {

/// Everything a run needs. Keys in a config file carry the member names.
struct RunConfig {
  std::string problem = "dahlquist";  // dahlquist | heat1d | heat2d
  double lambda = -1.0;
  double a = 1.0;
  std::size_t nx = 33;
  std::size_t ny = 33;
  double t_start = 0.0;
  double t_stop = 5.0;
  /// Number of time points on the finest grid, both ends included.
  std::size_t nt = 101;
  std::size_t levels = 2;
  /// One factor for every level, or one per level pair.
  std::vector<std::size_t> coarsening{2};
  std::string cycle_type = "V";  // V | F
  int cf_iter = 1;
  bool nested_iteration = true;
  double tol = 1e-7;
  int max_iter = 100;
  std::uint64_t seed = 0;
  int workers_time = 1;
  int workers_space = 1;
  std::string transport = "threads";  // threads | mpi
  std::string output_dir = ".";
  bool trace = false;
  /// heat1d only: per-level spatial point counts in nx_levels.
  bool spatial_coarsening = false;
  std::vector<std::size_t> nx_levels;
  bool skip_first_f_relax = true;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Parses `key = value` lines; `#` starts a comment. If the text has a
/// `[config]` line (as summary.txt does) only the lines after it are read.
/// Throws ConfigError naming `source`, the line and the key.
RunConfig parse_config(std::string_view text, std::string_view source = "<config>");
RunConfig load_config_file(const std::string& path);

/// Sets one key from its textual value.
void set_value(RunConfig& config, std::string_view key, std::string_view value);
/// `key=value`, as given to --override.
void apply_override(RunConfig& config, std::string_view assignment);

/// Cross-field checks not covered by single-value parsing.
void validate(const RunConfig& config);

/// One `key = value` line per key, in a fixed order; parse_config inverts it.
std::string format_config(const RunConfig& config);

}  // namespace mgrit::cli
