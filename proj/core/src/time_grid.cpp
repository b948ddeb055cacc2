#include "mgrit/time_grid.hpp"

#include <cmath>
#include <sstream>

#include "mgrit/errors.hpp"

namespace mgrit {

TimeGrid::TimeGrid(std::vector<double> points) : points_(std::move(points)) {
  if (points_.size() < 2) {
    throw StructureError("time grid needs at least 2 points, got " +
                         std::to_string(points_.size()));
  }
  for (std::size_t i = 1; i < points_.size(); ++i) {
    if (!(points_[i] > points_[i - 1]) || !std::isfinite(points_[i])) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "time grid not strictly increasing at index " << i << " (" << points_[i - 1]
          << " -> " << points_[i] << ")";
      throw StructureError(msg.str());
    }
  }
}

TimeGrid TimeGrid::uniform(double t_start, double t_stop, std::size_t count) {
  if (count < 2) throw StructureError("uniform time grid needs at least 2 points");
  if (!(t_stop > t_start)) throw StructureError("uniform time grid needs t_start < t_stop");
  const auto intervals = static_cast<double>(count - 1);
  const double dt = (t_stop - t_start) / intervals;
  std::vector<double> points(count);
  for (std::size_t i = 0; i < count; ++i) points[i] = t_start + static_cast<double>(i) * dt;
  points.back() = t_stop;
  return TimeGrid(std::move(points));
}

TimeGrid TimeGrid::select(std::span<const std::size_t> indices) const {
  std::vector<double> out;
  out.reserve(indices.size());
  for (std::size_t i : indices) {
    if (i >= points_.size()) throw StructureError("time grid index out of range");
    out.push_back(points_[i]);
  }
  return TimeGrid(std::move(out));
}

}  // namespace mgrit
