#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "mgrit/application.hpp"
#include "mgrit/boundary_exchange.hpp"
#include "mgrit/decomposition.hpp"
#include "mgrit/hierarchy.hpp"
#include "mgrit/transport.hpp"

namespace mgrit {

enum class CycleType { V, F };

struct MgritSettings {
  CycleType cycle_type = CycleType::V;
  /// Number of CF-sweeps after the leading F-sweep (0: F, 1: FCF, 2: FCFCF).
  int cf_iter = 1;
  double tol = 1e-7;
  int max_iter = 100;
  bool nested_iteration = true;
  std::uint64_t random_seed = 0;
  /// Omit the leading finest-level F-relaxation from the third iteration on.
  bool skip_first_f_relax_after_two_iters = true;
  /// One transfer per level pair (fine level l -> l+1); empty means identity.
  std::vector<std::shared_ptr<const SpatialTransfer>> transfers;
  /// Record a level/op/index-range event for every engine operation.
  bool trace = false;

  /// Throws ConfigError on invalid values.
  void validate(std::size_t num_levels) const;
};

struct SolveInfo {
  int iterations = 0;
  /// Space-time residual after every completed iteration.
  std::vector<double> residual_history;
  /// Seconds since the start of solve() at the end of every iteration.
  std::vector<double> cumulative_seconds;
  /// Residual of the initial guess (after nested iteration, if enabled).
  double setup_residual = 0.0;
  double setup_seconds = 0.0;
  double solve_seconds = 0.0;
  bool converged = false;
};

struct TraceEvent {
  std::size_t level;
  std::string op;
  std::size_t first;
  std::size_t last;

  friend bool operator==(const TraceEvent&, const TraceEvent&) = default;
};

/// `level,op,first_index,last_index`
std::string format_trace_event(const TraceEvent& event);

/// Per-level arrays over the owned slice of the level's time points.
struct LevelState {
  IndexRange owned;
  std::vector<State> u;
  /// Restricted approximation before the coarse solve (coarse levels only).
  std::vector<State> v;
  /// FAS right-hand side. On the finest level g[0] is the initial condition
  /// and every other entry is zero.
  std::vector<State> g;

  State& u_at(std::size_t i) { return u[i - owned.begin]; }
  const State& u_at(std::size_t i) const { return u[i - owned.begin]; }
  State& v_at(std::size_t i) { return v[i - owned.begin]; }
  State& g_at(std::size_t i) { return g[i - owned.begin]; }
  const State& g_at(std::size_t i) const { return g[i - owned.begin]; }
};

/// Euclidean combination of per-C-point residual norms, summed in order.
double residual_norm(std::span<const double> per_point_norms);

/// MGRIT with full approximation storage, run by one time worker over its
/// slice of every level. All workers of a time communicator construct a
/// Solver from the same hierarchy and settings and call the same methods in
/// the same order.
class Solver {
 public:
  /// Single-worker solver.
  Solver(std::shared_ptr<const Hierarchy> hierarchy, MgritSettings settings);
  /// One worker of `transport.size()`; `transport` must outlive the solver.
  Solver(std::shared_ptr<const Hierarchy> hierarchy, MgritSettings settings,
         Transport& transport);

  Solver(const Solver&) = delete;
  Solver& operator=(const Solver&) = delete;

  /// Setup (initial guess, optional nested iteration) followed by cycles
  /// until the residual drops below tol or max_iter is reached.
  SolveInfo solve();

  /// Reset every level to the configured initial guess.
  void initialize();

  void f_relax(std::size_t level);
  void c_relax(std::size_t level);
  /// F-relaxation (unless !leading_f) followed by cf_iter (C, F) pairs.
  void relax(std::size_t level, int cf_iter, bool leading_f = true);

  /// Norm of the residual at each owned C-point of the finest level, in
  /// index order. Index 0 contributes |g_0 - u_0|.
  std::vector<double> residual_at_c_points();
  /// Global space-time residual, identical on every worker.
  double space_time_residual();

  void restrict_fas(std::size_t fine_level);
  /// Sequential forward solve of the coarsest level on one worker.
  void coarse_solve();
  void correct_and_interpolate(std::size_t fine_level);

  void v_cycle(std::size_t level, bool leading_f = true);
  void f_cycle(std::size_t level, bool leading_f = true);
  void nested_iteration();

  /// Finest-level solution on the root worker (rank 0); empty elsewhere.
  std::vector<State> gather_solution();

  LevelState& state(std::size_t level) { return states_.at(level); }
  const LevelState& state(std::size_t level) const { return states_.at(level); }
  const Hierarchy& hierarchy() const noexcept { return *hierarchy_; }
  const TimeDecomposition& decomposition() const noexcept { return decomposition_; }
  const MgritSettings& settings() const noexcept { return settings_; }
  Transport& transport() noexcept { return *transport_; }
  const std::vector<TraceEvent>& trace() const noexcept { return trace_; }
  void clear_trace() { trace_.clear(); }

 private:
  const Application& app(std::size_t level) const { return *hierarchy_->level(level).app; }
  const SpatialTransfer& transfer(std::size_t fine_level) const;
  void record(std::size_t level, const char* op);
  void step_into(std::size_t level, std::size_t index, const State& previous);
  State residual_at(std::size_t index, const State& previous) const;

  std::shared_ptr<const Hierarchy> hierarchy_;
  MgritSettings settings_;
  SerialTransport serial_;
  Transport* transport_;
  TimeDecomposition decomposition_;
  std::vector<BoundaryExchange> exchange_;
  std::vector<LevelState> states_;
  std::vector<TraceEvent> trace_;
  IdentityTransfer identity_;
};

}  // namespace mgrit
