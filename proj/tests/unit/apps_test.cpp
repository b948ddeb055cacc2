#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "mgrit/apps/dahlquist.hpp"
#include "mgrit/apps/heat1d.hpp"
#include "mgrit/apps/heat2d.hpp"
#include "mgrit/apps/tridiagonal.hpp"
#include "mgrit/errors.hpp"
#include "mgrit/solver.hpp"
#include "support.hpp"

namespace mgrit {
namespace {

using testing::max_diff;
using testing::scalar;

TEST(Dahlquist, BackwardEulerStep) {
  const apps::Dahlquist app(TimeGrid::uniform(0.0, 1.0, 21));
  const State u = app.step(State::make<ScalarVector>(1.0), 0.0, 0.05);
  EXPECT_EQ(scalar(u), 0.9523809523809523);
}

TEST(Dahlquist, ZeroLambdaIsIdentity) {
  const apps::Dahlquist app(TimeGrid::uniform(0.0, 1.0, 3), 0.0);
  EXPECT_EQ(scalar(app.step(State::make<ScalarVector>(2.75), 0.3, 0.9)), 2.75);
}

TEST(Dahlquist, TwoStepsComposeIntoMarch) {
  const apps::Dahlquist app(TimeGrid::uniform(0.0, 0.1, 3));
  const auto march = time_march(app);
  const State once = app.step(app.vector_t_start(), 0.0, 0.05);
  EXPECT_EQ(scalar(march[2]), scalar(app.step(once, 0.05, 0.1)));
}

TEST(Application, PropagateChecksInput) {
  const apps::Dahlquist app(TimeGrid::uniform(0.0, 1.0, 3));
  EXPECT_THROW(app.propagate(State::make<ScalarVector>(NAN), 0.0, 0.5), PropagationError);
  EXPECT_THROW(app.propagate(State::make<ScalarVector>(1.0), 0.5, 0.5), PropagationError);
}

TEST(Step, Deterministic) {
  const apps::Heat1D app(TimeGrid::uniform(0.0, 1.0, 5), 33);
  const State a = app.step(app.vector_t_start(), 0.0, 0.25);
  const State b = app.step(app.vector_t_start(), 0.0, 0.25);
  EXPECT_EQ(a.pack(), b.pack());
}

TEST(Tridiagonal, MatchesDenseSolve) {
  const std::vector<double> lower{0.0, -1.0, 2.0, 0.5}, diag{4.0, 5.0, 6.0, 3.0},
      upper{1.0, 0.5, -1.0, 0.0};
  const std::vector<double> x{1.0, -2.0, 0.5, 3.0};
  std::vector<double> b(4);
  for (std::size_t i = 0; i < 4; ++i) {
    b[i] = diag[i] * x[i] + (i > 0 ? lower[i] * x[i - 1] : 0.0) + (i < 3 ? upper[i] * x[i + 1] : 0.0);
  }
  apps::solve_tridiagonal(lower, diag, upper, b);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(b[i], x[i], 1e-15);
}

TEST(Tridiagonal, ZeroPivotThrows) {
  std::vector<double> rhs{1.0, 1.0};
  EXPECT_THROW(apps::solve_tridiagonal(std::vector<double>{0.0, 1.0}, std::vector<double>{0.0, 1.0},
                                       std::vector<double>{1.0, 0.0}, rhs),
               PropagationError);
}

TEST(Heat1D, ExactSolutionValues) {
  EXPECT_EQ(apps::heat1d_exact(0.5, 0.0), 1.0);
  EXPECT_EQ(apps::heat1d_exact(0.0, 1.3), 0.0);
  EXPECT_NEAR(apps::heat1d_exact(1.0, 0.7), 0.0, 1e-15);
}

TEST(Heat1D, ForcingMatchesExactSolution) {
  // u_t - a u_xx evaluated analytically on sin(pi x) cos t.
  const apps::Heat1D app(TimeGrid::uniform(0.0, 1.0, 3), 9, 2.0);
  const double pi = std::numbers::pi;
  for (double x : {0.1, 0.4, 0.75}) {
    for (double t : {0.0, 0.6, 1.9}) {
      const double lhs = -std::sin(pi * x) * std::sin(t) + 2.0 * pi * pi * std::sin(pi * x) * std::cos(t);
      EXPECT_NEAR(app.forcing(x, t), lhs, 1e-12);
    }
  }
}

TEST(Heat1D, ZeroStateZeroForcing) {
  const apps::Heat1D app(TimeGrid::uniform(0.0, 1.0, 3), 9);
  // The forcing vanishes where tan t = a pi^2.
  const double t = std::atan(std::numbers::pi * std::numbers::pi);
  const State u = app.step(app.vector_template(), t - 0.1, t);
  EXPECT_LE(u.norm(), 1e-13);
}

TEST(Heat1D, BoundariesStayZero) {
  const apps::Heat1D app(TimeGrid::uniform(0.0, 2.0, 9), 17);
  for (const auto& u : time_march(app)) {
    const auto v = u.as<GridVector>().values();
    EXPECT_EQ(v.front(), 0.0);
    EXPECT_EQ(v.back(), 0.0);
  }
}

double heat1d_error(std::size_t nx, std::size_t intervals) {
  const apps::Heat1D app(TimeGrid::uniform(0.0, 2.0, intervals + 1), nx);
  const auto u = time_march(app);
  double err = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    err = std::max(err, max_diff(u[i], app.exact(app.time_grid()[i])));
  }
  return err;
}

TEST(Heat1D, FirstOrderInTime) {
  const double coarse = heat1d_error(513, 32);
  const double fine = heat1d_error(513, 64);
  const double ratio = coarse / fine;
  EXPECT_GE(ratio, 1.7);
  EXPECT_LE(ratio, 2.3);
}

TEST(Heat1D, OneStepFromExactIsClose) {
  const apps::Heat1D app(TimeGrid::uniform(0.0, 2.0, 1025), 1025);
  const double dt = 2.0 / 1024.0;
  const State u = app.step(app.vector_t_start(), 0.0, dt);
  EXPECT_LE(max_diff(u, app.exact(dt)), dt * dt);  // local error of one step
}

// Max-norm error over all time points against the final-time-aligned values
// of a reference march on the same spatial grid with `ref_intervals` steps.
double heat2d_time_error(std::size_t n, std::size_t intervals, std::size_t ref_intervals) {
  const apps::Heat2D app(TimeGrid::uniform(0.0, 1.0, intervals + 1), n, n);
  const apps::Heat2D ref(TimeGrid::uniform(0.0, 1.0, ref_intervals + 1), n, n);
  const auto u = time_march(app);
  const auto r = time_march(ref);
  const std::size_t stride = ref_intervals / intervals;
  double err = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) err = std::max(err, max_diff(u[i], r[i * stride]));
  return err;
}

double heat2d_error(std::size_t n, std::size_t intervals) {
  const apps::Heat2D app(TimeGrid::uniform(0.0, 1.0, intervals + 1), n, n);
  const auto u = time_march(app);
  double err = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    err = std::max(err, max_diff(u[i], app.exact(app.time_grid()[i])));
  }
  return err;
}

TEST(Heat2D, FirstOrderInTime) {
  const double ratio = heat2d_time_error(17, 128, 8192) / heat2d_time_error(17, 256, 8192);
  EXPECT_GE(ratio, 1.7);
  EXPECT_LE(ratio, 2.3);
}

TEST(Heat2D, SecondOrderInSpace) {
  const double ratio = heat2d_error(17, 1024) / heat2d_error(33, 1024);
  EXPECT_GE(ratio, 3.5);
  EXPECT_LE(ratio, 4.5);
}

TEST(Heat2D, SolvesImplicitSystem) {
  const apps::Heat2D app(TimeGrid::uniform(0.0, 1.0, 3), 33, 17, 1.5);
  Rng rng(1);
  State u0 = app.vector_template().random_like(rng);
  auto values = u0.as<GridVector>().values();
  for (std::size_t ix = 0; ix < 33; ++ix) values[ix] = values[16 * 33 + ix] = 0.0;
  for (std::size_t iy = 0; iy < 17; ++iy) values[iy * 33] = values[iy * 33 + 32] = 0.0;
  const State u1 = app.step(u0, 0.2, 0.7);
  const auto r = app.step_residual(u0, u1, 0.2, 0.7);
  double rn = 0.0;
  for (double x : r) rn += x * x;
  EXPECT_LE(std::sqrt(rn) / u1.norm(), 1e-12);
}

TEST(Heat2D, ExactSolutionValues) {
  EXPECT_NEAR(apps::heat2d_exact(0.25, 0.25, 0.0), 1.0, 1e-15);
  EXPECT_NEAR(apps::heat2d_exact(0.0, 0.3, 0.4), 0.0, 1e-15);
}

TEST(Heat2D, ZeroStateZeroForcing) {
  const apps::Heat2D app(TimeGrid::uniform(0.0, 1.0, 3), 9, 9);
  const double t = std::atan(8.0 * std::numbers::pi * std::numbers::pi);
  EXPECT_LE(app.step(app.vector_template(), t - 0.1, t).norm(), 1e-13);
}

TEST(Heat1DTransfer, InterpolationExactOnLinear) {
  const apps::Heat1DTransfer transfer(9, 5);
  std::vector<double> coarse(5), fine(9);
  for (std::size_t j = 0; j < 5; ++j) coarse[j] = 0.5 + 2.0 * j * 0.25;
  for (std::size_t i = 0; i < 9; ++i) fine[i] = 0.5 + 2.0 * i * 0.125;
  const State p = transfer.interpolate_to_fine(State::make<GridVector>(coarse));
  const auto v = p.as<GridVector>().values();
  for (std::size_t i = 0; i < 9; ++i) EXPECT_NEAR(v[i], fine[i], 1e-15);
}

TEST(Heat1DTransfer, RestrictInterpolateIdentityOnLinear) {
  const apps::Heat1DTransfer transfer(17, 9);
  std::vector<double> coarse(9);
  for (std::size_t j = 0; j < 9; ++j) coarse[j] = 1.0 - 0.125 * j;
  const State c = State::make<GridVector>(coarse);
  EXPECT_LE(max_diff(transfer.restrict_to_coarse(transfer.interpolate_to_fine(c)), c), 1e-15);
}

TEST(Heat1DTransfer, PreservesConstant) {
  const apps::Heat1DTransfer transfer(17, 9);
  const State f = State::make<GridVector>(std::vector<double>(17, 0.3));
  EXPECT_EQ(transfer.interpolate_to_fine(transfer.restrict_to_coarse(f)).pack(), f.pack());
}

TEST(Heat1DTransfer, RejectsNonNested) {
  EXPECT_THROW(apps::Heat1DTransfer(16, 9), StructureError);
}

TEST(SpatialCoarsening, ConvergesToSequential) {
  const auto grid = TimeGrid::uniform(0.0, 2.0, 65);
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < 65; i += 4) keep.push_back(i);
  const auto fine = std::make_shared<apps::Heat1D>(grid, 33);
  const auto coarse = std::make_shared<apps::Heat1D>(grid.select(keep), 17);
  const auto h = std::make_shared<Hierarchy>(build_hierarchy_from_grids({fine, coarse}));
  MgritSettings s;
  s.transfers = {std::make_shared<apps::Heat1DTransfer>(33, 17)};
  Solver solver(h, s);
  const auto info = solver.solve();
  EXPECT_TRUE(info.converged);
  EXPECT_LE(max_diff(solver.gather_solution(), time_march(*fine)), 10 * s.tol);
}

}  // namespace
}  // namespace mgrit
