#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "mgrit/hierarchy.hpp"
#include "mgrit/index_range.hpp"

namespace mgrit {

/// Contiguous split of `n_points` indices over `n_workers`: the first
/// (n_points mod n_workers) workers receive one extra point.
std::vector<IndexRange> distribute_points(std::size_t n_points, int n_workers);

/// Ownership of every level's time points by the workers of one time
/// communicator. Level 0 is split evenly; a coarse point belongs to the worker
/// owning its fine-level image.
class TimeDecomposition {
 public:
  TimeDecomposition(const Hierarchy& hierarchy, int n_workers);

  int num_workers() const noexcept { return n_workers_; }
  std::size_t num_levels() const noexcept { return ranges_.size(); }

  IndexRange range(std::size_t level, int worker) const;
  int owner(std::size_t level, std::size_t index) const;
  /// Nearest lower rank owning a non-empty range on `level`.
  std::optional<int> left_neighbor(std::size_t level, int worker) const;
  /// Nearest higher rank owning a non-empty range on `level`.
  std::optional<int> right_neighbor(std::size_t level, int worker) const;
  /// Number of ownership boundaries on `level` (non-empty ranges minus one).
  std::size_t boundaries(std::size_t level) const;
  /// Worker that runs the sequential solve on the coarsest level.
  int coarse_solver() const noexcept { return coarse_solver_; }

 private:
  int n_workers_;
  std::vector<std::vector<IndexRange>> ranges_;  // [level][worker]
  int coarse_solver_ = 0;
};

/// Row/column split of a world of workers into time and space groups.
struct CommunicatorSplit {
  int world_size = 1;
  int world_rank = 0;
  int time_size = 1;
  int time_rank = 0;
  int space_size = 1;
  int space_rank = 0;
};

/// Workers with equal (rank mod space_size) share a time communicator; workers
/// with equal (rank div space_size) share a space communicator.
CommunicatorSplit split_communicator(int world_size, int world_rank, int space_size);

}  // namespace mgrit
