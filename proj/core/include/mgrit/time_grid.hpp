#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace mgrit {

/// Strictly increasing set of time points with at least two entries.
class TimeGrid {
 public:
  /// Throws StructureError unless `points` is strictly increasing with >= 2 entries.
  explicit TimeGrid(std::vector<double> points);

  /// `count` equidistant points from t_start to t_stop (both included).
  static TimeGrid uniform(double t_start, double t_stop, std::size_t count);

  double t_start() const noexcept { return points_.front(); }
  double t_stop() const noexcept { return points_.back(); }
  std::size_t count() const noexcept { return points_.size(); }
  std::size_t intervals() const noexcept { return points_.size() - 1; }
  double operator[](std::size_t i) const { return points_[i]; }
  std::span<const double> points() const noexcept { return points_; }

  /// Points at the given (strictly increasing) indices.
  TimeGrid select(std::span<const std::size_t> indices) const;

  friend bool operator==(const TimeGrid&, const TimeGrid&) = default;

 private:
  std::vector<double> points_;
};

}  // namespace mgrit
