#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "mgrit/application.hpp"
#include "mgrit/index_range.hpp"

namespace mgrit {

/// One level of the time-grid hierarchy together with its C/F splitting
/// towards the next coarser level.
struct LevelProblem {
  std::shared_ptr<const Application> app;
  /// cf_map[ic] is the index on this level of coarse point ic. Empty on the
  /// coarsest level.
  std::vector<std::size_t> cf_map;
  /// Maximal runs of F-points, including a trailing run after the last C-point.
  std::vector<IndexRange> f_blocks;
  /// is_c_point[i] != 0 iff point i survives on the next coarser level. On
  /// the coarsest level every point is flagged.
  std::vector<char> is_c_point;

  std::size_t count() const { return app->time_grid().count(); }
  bool c_point(std::size_t i) const { return is_c_point[i] != 0; }
};

class Hierarchy {
 public:
  explicit Hierarchy(std::vector<LevelProblem> levels);

  std::size_t num_levels() const noexcept { return levels_.size(); }
  std::size_t coarsest() const noexcept { return levels_.size() - 1; }
  const LevelProblem& level(std::size_t l) const { return levels_.at(l); }
  std::span<const LevelProblem> levels() const noexcept { return levels_; }
  /// Point counts from finest to coarsest.
  std::vector<std::size_t> level_sizes() const;

 private:
  std::vector<LevelProblem> levels_;
};

/// Maximal F-point runs of a `fine_count`-point grid whose C-points are
/// `coarse_indices` (sorted, starting with 0).
std::vector<IndexRange> cf_splitting(std::size_t fine_count,
                                     std::span<const std::size_t> coarse_indices);

/// Every m_l-th point of level l becomes level l+1, starting at index 0.
/// Coarse applications come from `problem.rediscretize`. A single factor is
/// reused on all levels; otherwise `coarsening` needs levels-1 entries.
Hierarchy build_uniform_hierarchy(std::shared_ptr<const Application> problem, std::size_t levels,
                                  std::span<const std::size_t> coarsening);
Hierarchy build_uniform_hierarchy(std::shared_ptr<const Application> problem, std::size_t levels,
                                  std::size_t coarsening);

/// Hierarchy from explicitly constructed per-level applications, finest first.
/// Each level's time points must be a proper subset of the previous level's
/// starting at the same t_start.
Hierarchy build_hierarchy_from_grids(std::vector<std::shared_ptr<const Application>> apps);

/// Coarse point counts produced by applying `factors` to `fine_points` points.
/// Throws StructureError when a level would keep fewer than 2 points.
std::vector<std::size_t> uniform_level_sizes(std::size_t fine_points,
                                             std::span<const std::size_t> factors);

}  // namespace mgrit
