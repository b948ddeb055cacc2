#pragma once

#include <cstddef>
#include <memory>

#include "mgrit/application.hpp"

namespace mgrit::apps {

/// sin(pi x) cos(t)
double heat1d_exact(double x, double t);

/// u_t - a u_xx = b(x, t) on [0, 1] with zero Dirichlet boundaries and
/// b = -sin(pi x)(sin t - a pi^2 cos t), so that heat1d_exact solves it.
/// Central differences on nx points (boundaries included), backward Euler
/// with the forcing taken at the end of the step. The state is a GridVector
/// of the nx nodal values.
class Heat1D final : public Application {
 public:
  Heat1D(TimeGrid grid, std::size_t nx, double a = 1.0);

  std::size_t nx() const noexcept { return nx_; }
  double a() const noexcept { return a_; }
  double x(std::size_t i) const { return static_cast<double>(i) * h_; }
  double forcing(double x, double t) const;
  /// Exact solution sampled on the grid at time t.
  State exact(double t) const;

  State step(const State& u_start, double t_start, double t_stop) const override;
  std::shared_ptr<const Application> rediscretize(TimeGrid grid) const override;

 private:
  std::size_t nx_;
  double a_;
  double h_;
};

/// Full-weighting restriction and linear interpolation between nested 1D
/// grids with n_fine = 2 n_coarse - 1 points. Boundary values are injected.
class Heat1DTransfer final : public SpatialTransfer {
 public:
  Heat1DTransfer(std::size_t n_fine, std::size_t n_coarse);

  State restrict_to_coarse(const State& fine) const override;
  State interpolate_to_fine(const State& coarse) const override;

 private:
  std::size_t n_fine_;
  std::size_t n_coarse_;
};

}  // namespace mgrit::apps
