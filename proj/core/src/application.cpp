#include "mgrit/application.hpp"

#include <sstream>

#include "mgrit/errors.hpp"

namespace mgrit {

Application::Application(TimeGrid grid, State vector_template, State vector_t_start)
    : grid_(std::move(grid)),
      template_(std::move(vector_template)),
      t_start_(std::move(vector_t_start)) {
  if (template_.empty() || t_start_.empty()) {
    throw StructureError("application needs a vector template and an initial condition");
  }
  if (template_.packed_size() != t_start_.packed_size()) {
    std::ostringstream msg;
    msg << "vector_template packs " << template_.packed_size() << " values but vector_t_start packs "
        << t_start_.packed_size();
    throw StructureError(msg.str());
  }
}

State Application::propagate(const State& u_start, double t_start, double t_stop) const {
  if (!(t_start < t_stop)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "step requires t_start < t_stop, got [" << t_start << ", " << t_stop << "]";
    throw PropagationError(msg.str());
  }
  if (!u_start.is_finite()) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "non-finite state entering step [" << t_start << ", " << t_stop << "]";
    throw PropagationError(msg.str());
  }
  return step(u_start, t_start, t_stop);
}

std::vector<State> time_march(const Application& app) {
  const auto& grid = app.time_grid();
  std::vector<State> u;
  u.reserve(grid.count());
  u.push_back(app.vector_t_start());
  for (std::size_t i = 1; i < grid.count(); ++i) {
    u.push_back(app.propagate(u.back(), grid[i - 1], grid[i]));
  }
  return u;
}

}  // namespace mgrit
