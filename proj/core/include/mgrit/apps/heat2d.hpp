#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "mgrit/application.hpp"

namespace mgrit::apps {

/// sin(2 pi x) sin(2 pi y) cos(t)
double heat2d_exact(double x, double y, double t);

/// u_t - a (u_xx + u_yy) = b on the unit square with zero Dirichlet
/// boundaries and b = sin(2 pi x) sin(2 pi y)(-sin t + 8 pi^2 a cos t), so
/// that heat2d_exact solves it. 5-point stencil on an nx x ny grid
/// (boundaries included), backward Euler with forcing at the end of the step.
///
/// State layout: GridVector of nx*ny values, index iy*nx + ix.
///
/// The implicit system is solved directly in the discrete sine basis of the
/// interior, which diagonalizes the 5-point Laplacian.
class Heat2D final : public Application {
 public:
  Heat2D(TimeGrid grid, std::size_t nx, std::size_t ny, double a = 1.0);

  std::size_t nx() const noexcept { return nx_; }
  std::size_t ny() const noexcept { return ny_; }
  double a() const noexcept { return a_; }
  double x(std::size_t ix) const { return static_cast<double>(ix) * hx_; }
  double y(std::size_t iy) const { return static_cast<double>(iy) * hy_; }
  double forcing(double x, double y, double t) const;
  State exact(double t) const;

  /// u_t1 - dt a L u_t1 - u_t0 - dt b(t1) on the interior points, i.e. the
  /// residual of the linear system step() solves.
  std::vector<double> step_residual(const State& u_t0, const State& u_t1, double t0,
                                    double t1) const;

  State step(const State& u_start, double t_start, double t_stop) const override;
  std::shared_ptr<const Application> rediscretize(TimeGrid grid) const override;

 private:
  std::size_t nx_;
  std::size_t ny_;
  double a_;
  double hx_;
  double hy_;
  // Orthonormal sine bases (symmetric) and Laplacian eigenvalues per direction.
  std::vector<double> sx_, sy_;
  std::vector<double> mu_x_, mu_y_;
};

}  // namespace mgrit::apps
