#pragma once

#include <memory>
#include <vector>

#include "mgrit/time_grid.hpp"
#include "mgrit/vector.hpp"

namespace mgrit {

/// A time-dependent problem: time grid, initial condition and a one-step
/// integrator. Instances are immutable and may be shared across workers.
class Application {
 public:
  Application(TimeGrid grid, State vector_template, State vector_t_start);
  virtual ~Application() = default;

  const TimeGrid& time_grid() const noexcept { return grid_; }
  /// Zero-valued prototype used to allocate every time point.
  const State& vector_template() const noexcept { return template_; }
  /// Initial condition at time_grid().t_start().
  const State& vector_t_start() const noexcept { return t_start_; }

  /// Propagate `u_start` from t_start to t_stop, including forcing.
  virtual State step(const State& u_start, double t_start, double t_stop) const = 0;

  /// Same problem on another time grid (coarse-level re-discretization).
  virtual std::shared_ptr<const Application> rediscretize(TimeGrid grid) const = 0;

  /// step() guarded by the interval and finiteness checks the solver relies on.
  State propagate(const State& u_start, double t_start, double t_stop) const;

 private:
  TimeGrid grid_;
  State template_;
  State t_start_;
};

/// Sequential forward solve over the application's own time grid.
std::vector<State> time_march(const Application& app);

/// Spatial grid transfer between two consecutive levels.
class SpatialTransfer {
 public:
  virtual ~SpatialTransfer() = default;
  virtual State restrict_to_coarse(const State& fine) const = 0;
  virtual State interpolate_to_fine(const State& coarse) const = 0;
};

class IdentityTransfer final : public SpatialTransfer {
 public:
  State restrict_to_coarse(const State& fine) const override { return fine; }
  State interpolate_to_fine(const State& coarse) const override { return coarse; }
};

}  // namespace mgrit
