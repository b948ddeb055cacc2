#include "mgrit/apps/heat2d.hpp"

#include <cmath>
#include <numbers>

#include "mgrit/errors.hpp"

namespace mgrit::apps {

using std::numbers::pi;

double heat2d_exact(double x, double y, double t) {
  return std::sin(2.0 * pi * x) * std::sin(2.0 * pi * y) * std::cos(t);
}

namespace {

std::size_t checked(std::size_t n) {
  if (n < 3) throw StructureError("heat2d needs at least 3 points per direction");
  return n;
}

State sample(std::size_t nx, std::size_t ny, double t) {
  const double hx = 1.0 / static_cast<double>(nx - 1);
  const double hy = 1.0 / static_cast<double>(ny - 1);
  std::vector<double> v(nx * ny, 0.0);
  for (std::size_t iy = 1; iy + 1 < ny; ++iy) {
    for (std::size_t ix = 1; ix + 1 < nx; ++ix) {
      v[iy * nx + ix] = heat2d_exact(static_cast<double>(ix) * hx, static_cast<double>(iy) * hy, t);
    }
  }
  return State::make<GridVector>(std::move(v));
}

void sine_basis(std::size_t m, double h, std::vector<double>& s, std::vector<double>& mu) {
  s.assign(m * m, 0.0);
  mu.assign(m, 0.0);
  const double scale = std::sqrt(2.0 / static_cast<double>(m + 1));
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t i = 0; i < m; ++i) {
      s[k * m + i] = scale * std::sin(static_cast<double>((i + 1) * (k + 1)) * pi /
                                      static_cast<double>(m + 1));
    }
    const double half = std::sin(static_cast<double>(k + 1) * pi / (2.0 * static_cast<double>(m + 1)));
    mu[k] = -4.0 / (h * h) * half * half;
  }
}

// out = a * b for row-major a (r x k) and b (k x c).
void matmul(const std::vector<double>& a, const std::vector<double>& b, std::vector<double>& out,
            std::size_t r, std::size_t k, std::size_t c) {
  out.assign(r * c, 0.0);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t p = 0; p < k; ++p) {
      const double aip = a[i * k + p];
      for (std::size_t j = 0; j < c; ++j) out[i * c + j] += aip * b[p * c + j];
    }
  }
}

}  // namespace

Heat2D::Heat2D(TimeGrid grid, std::size_t nx, std::size_t ny, double a)
    : Application(grid, State::make<GridVector>(checked(nx) * checked(ny)),
                  sample(nx, ny, grid.t_start())),
      nx_(nx),
      ny_(ny),
      a_(a),
      hx_(1.0 / static_cast<double>(nx - 1)),
      hy_(1.0 / static_cast<double>(ny - 1)) {
  if (!(a > 0.0)) throw StructureError("heat2d needs a positive conductivity");
  sine_basis(nx - 2, hx_, sx_, mu_x_);
  sine_basis(ny - 2, hy_, sy_, mu_y_);
}

double Heat2D::forcing(double x, double y, double t) const {
  return std::sin(2.0 * pi * x) * std::sin(2.0 * pi * y) *
         (-std::sin(t) + 8.0 * pi * pi * a_ * std::cos(t));
}

State Heat2D::exact(double t) const { return sample(nx_, ny_, t); }

State Heat2D::step(const State& u_start, double t_start, double t_stop) const {
  const auto in = u_start.as<GridVector>().values();
  if (in.size() != nx_ * ny_) throw StructureError("heat2d state has the wrong size");
  const double dt = t_stop - t_start;
  const std::size_t mx = nx_ - 2;
  const std::size_t my = ny_ - 2;

  std::vector<double> rhs(my * mx);
  for (std::size_t q = 0; q < my; ++q) {
    for (std::size_t p = 0; p < mx; ++p) {
      rhs[q * mx + p] = in[(q + 1) * nx_ + p + 1] + dt * forcing(x(p + 1), y(q + 1), t_stop);
    }
  }
  std::vector<double> tmp, hat;
  matmul(sy_, rhs, tmp, my, my, mx);
  matmul(tmp, sx_, hat, my, mx, mx);
  for (std::size_t q = 0; q < my; ++q) {
    for (std::size_t p = 0; p < mx; ++p) hat[q * mx + p] /= 1.0 - dt * a_ * (mu_x_[p] + mu_y_[q]);
  }
  matmul(sy_, hat, tmp, my, my, mx);
  matmul(tmp, sx_, rhs, my, mx, mx);

  std::vector<double> out(nx_ * ny_, 0.0);
  for (std::size_t q = 0; q < my; ++q) {
    for (std::size_t p = 0; p < mx; ++p) out[(q + 1) * nx_ + p + 1] = rhs[q * mx + p];
  }
  return State::make<GridVector>(std::move(out));
}

std::vector<double> Heat2D::step_residual(const State& u_t0, const State& u_t1, double t0,
                                          double t1) const {
  const auto u0 = u_t0.as<GridVector>().values();
  const auto u1 = u_t1.as<GridVector>().values();
  const double dt = t1 - t0;
  std::vector<double> r;
  r.reserve((nx_ - 2) * (ny_ - 2));
  for (std::size_t iy = 1; iy + 1 < ny_; ++iy) {
    for (std::size_t ix = 1; ix + 1 < nx_; ++ix) {
      const std::size_t k = iy * nx_ + ix;
      const double lap = (u1[k - 1] - 2.0 * u1[k] + u1[k + 1]) / (hx_ * hx_) +
                         (u1[k - nx_] - 2.0 * u1[k] + u1[k + nx_]) / (hy_ * hy_);
      r.push_back(u1[k] - dt * a_ * lap - u0[k] - dt * forcing(x(ix), y(iy), t1));
    }
  }
  return r;
}

std::shared_ptr<const Application> Heat2D::rediscretize(TimeGrid grid) const {
  return std::make_shared<Heat2D>(std::move(grid), nx_, ny_, a_);
}

}  // namespace mgrit::apps
