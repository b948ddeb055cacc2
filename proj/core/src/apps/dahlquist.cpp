#include "mgrit/apps/dahlquist.hpp"

namespace mgrit::apps {

Dahlquist::Dahlquist(TimeGrid grid, double lambda, double u0)
    : Application(std::move(grid), State::make<ScalarVector>(0.0), State::make<ScalarVector>(u0)),
      lambda_(lambda),
      u0_(u0) {}

State Dahlquist::step(const State& u_start, double t_start, double t_stop) const {
  const double u = u_start.as<ScalarVector>().value();
  return State::make<ScalarVector>(1.0 / (1.0 - (t_stop - t_start) * lambda_) * u);
}

std::shared_ptr<const Application> Dahlquist::rediscretize(TimeGrid grid) const {
  return std::make_shared<Dahlquist>(std::move(grid), lambda_, u0_);
}

}  // namespace mgrit::apps
