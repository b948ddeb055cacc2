#include "mgrit/decomposition.hpp"

#include <algorithm>
#include <string>

#include "mgrit/errors.hpp"

namespace mgrit {

std::vector<IndexRange> distribute_points(std::size_t n_points, int n_workers) {
  if (n_workers < 1) throw ConfigError("need at least one worker");
  const auto p = static_cast<std::size_t>(n_workers);
  const std::size_t base = n_points / p;
  const std::size_t extra = n_points % p;
  std::vector<IndexRange> ranges(p);
  std::size_t begin = 0;
  for (std::size_t w = 0; w < p; ++w) {
    const std::size_t len = base + (w < extra ? 1 : 0);
    ranges[w] = {begin, begin + len};
    begin += len;
  }
  return ranges;
}

TimeDecomposition::TimeDecomposition(const Hierarchy& hierarchy, int n_workers)
    : n_workers_(n_workers) {
  ranges_.push_back(distribute_points(hierarchy.level(0).count(), n_workers));
  for (std::size_t l = 0; l + 1 < hierarchy.num_levels(); ++l) {
    const auto& cf = hierarchy.level(l).cf_map;
    std::vector<IndexRange> coarse(static_cast<std::size_t>(n_workers));
    for (std::size_t w = 0; w < coarse.size(); ++w) {
      const IndexRange fine = ranges_.back()[w];
      const auto lo = std::lower_bound(cf.begin(), cf.end(), fine.begin) - cf.begin();
      const auto hi = std::lower_bound(cf.begin(), cf.end(), fine.end) - cf.begin();
      coarse[w] = {static_cast<std::size_t>(lo), static_cast<std::size_t>(hi)};
    }
    ranges_.push_back(std::move(coarse));
  }
  coarse_solver_ = owner(hierarchy.coarsest(), 0);
}

IndexRange TimeDecomposition::range(std::size_t level, int worker) const {
  return ranges_.at(level).at(static_cast<std::size_t>(worker));
}

int TimeDecomposition::owner(std::size_t level, std::size_t index) const {
  const auto& ranges = ranges_.at(level);
  for (std::size_t w = 0; w < ranges.size(); ++w) {
    if (ranges[w].contains(index)) return static_cast<int>(w);
  }
  throw StructureError("index " + std::to_string(index) + " not owned on level " +
                       std::to_string(level));
}

std::optional<int> TimeDecomposition::left_neighbor(std::size_t level, int worker) const {
  const auto& ranges = ranges_.at(level);
  for (int w = worker - 1; w >= 0; --w) {
    if (!ranges[static_cast<std::size_t>(w)].empty()) return w;
  }
  return std::nullopt;
}

std::optional<int> TimeDecomposition::right_neighbor(std::size_t level, int worker) const {
  const auto& ranges = ranges_.at(level);
  for (int w = worker + 1; w < n_workers_; ++w) {
    if (!ranges[static_cast<std::size_t>(w)].empty()) return w;
  }
  return std::nullopt;
}

std::size_t TimeDecomposition::boundaries(std::size_t level) const {
  const auto& ranges = ranges_.at(level);
  const auto owners = std::count_if(ranges.begin(), ranges.end(),
                                    [](const IndexRange& r) { return !r.empty(); });
  return owners > 0 ? static_cast<std::size_t>(owners - 1) : 0;
}

CommunicatorSplit split_communicator(int world_size, int world_rank, int space_size) {
  if (world_size < 1 || world_rank < 0 || world_rank >= world_size) {
    throw ConfigError("invalid world rank " + std::to_string(world_rank) + " of " +
                      std::to_string(world_size));
  }
  if (space_size < 1 || world_size % space_size != 0) {
    throw ConfigError("world size " + std::to_string(world_size) +
                      " is not divisible by space size " + std::to_string(space_size));
  }
  CommunicatorSplit split;
  split.world_size = world_size;
  split.world_rank = world_rank;
  split.space_size = space_size;
  split.space_rank = world_rank % space_size;
  split.time_size = world_size / space_size;
  split.time_rank = world_rank / space_size;
  return split;
}

}  // namespace mgrit
