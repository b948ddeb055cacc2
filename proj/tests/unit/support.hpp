#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <vector>

#include "mgrit/apps/dahlquist.hpp"
#include "mgrit/hierarchy.hpp"
#include "mgrit/vector.hpp"

namespace mgrit::testing {

inline std::shared_ptr<const apps::Dahlquist> dahlquist(double t_stop, std::size_t points,
                                                        double lambda = -1.0) {
  return std::make_shared<apps::Dahlquist>(TimeGrid::uniform(0.0, t_stop, points), lambda);
}

inline std::shared_ptr<const Hierarchy> uniform(std::shared_ptr<const Application> app,
                                                std::size_t levels, std::size_t factor) {
  return std::make_shared<Hierarchy>(build_uniform_hierarchy(std::move(app), levels, factor));
}

inline double scalar(const State& s) { return s.as<ScalarVector>().value(); }

inline double max_diff(const State& a, const State& b) {
  const auto x = a.pack();
  const auto y = b.pack();
  double m = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(x[i] - y[i]));
  return m;
}

inline double max_diff(const std::vector<State>& a, const std::vector<State>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, max_diff(a[i], b[i]));
  return m;
}

}  // namespace mgrit::testing
