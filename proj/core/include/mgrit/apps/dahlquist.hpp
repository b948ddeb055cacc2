#pragma once

#include <memory>

#include "mgrit/application.hpp"

namespace mgrit::apps {

/// u' = lambda * u, backward Euler. The state is a single ScalarVector.
class Dahlquist final : public Application {
 public:
  explicit Dahlquist(TimeGrid grid, double lambda = -1.0, double u0 = 1.0);

  double lambda() const noexcept { return lambda_; }

  State step(const State& u_start, double t_start, double t_stop) const override;
  std::shared_ptr<const Application> rediscretize(TimeGrid grid) const override;

 private:
  double lambda_;
  double u0_;
};

}  // namespace mgrit::apps
