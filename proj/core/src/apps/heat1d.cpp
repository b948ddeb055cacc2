#include "mgrit/apps/heat1d.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "mgrit/apps/tridiagonal.hpp"
#include "mgrit/errors.hpp"

namespace mgrit::apps {

using std::numbers::pi;

double heat1d_exact(double x, double t) { return std::sin(pi * x) * std::cos(t); }

namespace {

std::size_t checked_nx(std::size_t nx) {
  if (nx < 3) throw StructureError("heat1d needs at least 3 spatial points");
  return nx;
}

State sample(std::size_t nx, double t) {
  const double h = 1.0 / static_cast<double>(nx - 1);
  std::vector<double> v(nx, 0.0);
  for (std::size_t i = 1; i + 1 < nx; ++i) v[i] = heat1d_exact(static_cast<double>(i) * h, t);
  return State::make<GridVector>(std::move(v));
}

}  // namespace

Heat1D::Heat1D(TimeGrid grid, std::size_t nx, double a)
    : Application(grid, State::make<GridVector>(checked_nx(nx)), sample(nx, grid.t_start())),
      nx_(nx),
      a_(a),
      h_(1.0 / static_cast<double>(nx - 1)) {
  if (!(a > 0.0)) throw StructureError("heat1d needs a positive conductivity");
}

double Heat1D::forcing(double x, double t) const {
  return -std::sin(pi * x) * (std::sin(t) - a_ * pi * pi * std::cos(t));
}

State Heat1D::exact(double t) const { return sample(nx_, t); }

State Heat1D::step(const State& u_start, double t_start, double t_stop) const {
  const auto in = u_start.as<GridVector>().values();
  if (in.size() != nx_) throw StructureError("heat1d state has the wrong size");
  const double dt = t_stop - t_start;
  const double r = dt * a_ / (h_ * h_);
  const std::size_t n = nx_ - 2;
  std::vector<double> lower(n, -r), diag(n, 1.0 + 2.0 * r), upper(n, -r), rhs(n);
  for (std::size_t j = 0; j < n; ++j) rhs[j] = in[j + 1] + dt * forcing(x(j + 1), t_stop);
  try {
    solve_tridiagonal(lower, diag, upper, rhs);
  } catch (const PropagationError& e) {
    std::ostringstream msg;
    msg.precision(17);
    msg << e.what() << " on [" << t_start << ", " << t_stop << "]";
    throw PropagationError(msg.str());
  }
  std::vector<double> out(nx_, 0.0);
  for (std::size_t j = 0; j < n; ++j) out[j + 1] = rhs[j];
  return State::make<GridVector>(std::move(out));
}

std::shared_ptr<const Application> Heat1D::rediscretize(TimeGrid grid) const {
  return std::make_shared<Heat1D>(std::move(grid), nx_, a_);
}

Heat1DTransfer::Heat1DTransfer(std::size_t n_fine, std::size_t n_coarse)
    : n_fine_(n_fine), n_coarse_(n_coarse) {
  if (n_coarse < 2 || n_fine != 2 * n_coarse - 1) {
    std::ostringstream msg;
    msg << "grids of " << n_fine << " and " << n_coarse << " points are not nested (need n_fine = 2 n_coarse - 1)";
    throw StructureError(msg.str());
  }
}

State Heat1DTransfer::restrict_to_coarse(const State& fine) const {
  const auto f = fine.as<GridVector>().values();
  if (f.size() != n_fine_) throw StructureError("restriction input has the wrong size");
  std::vector<double> c(n_coarse_);
  c.front() = f.front();
  c.back() = f.back();
  for (std::size_t j = 1; j + 1 < n_coarse_; ++j) {
    c[j] = 0.25 * f[2 * j - 1] + 0.5 * f[2 * j] + 0.25 * f[2 * j + 1];
  }
  return State::make<GridVector>(std::move(c));
}

State Heat1DTransfer::interpolate_to_fine(const State& coarse) const {
  const auto c = coarse.as<GridVector>().values();
  if (c.size() != n_coarse_) throw StructureError("interpolation input has the wrong size");
  std::vector<double> f(n_fine_);
  for (std::size_t j = 0; j < n_coarse_; ++j) f[2 * j] = c[j];
  for (std::size_t j = 0; j + 1 < n_coarse_; ++j) f[2 * j + 1] = 0.5 * (c[j] + c[j + 1]);
  return State::make<GridVector>(std::move(f));
}

}  // namespace mgrit::apps
